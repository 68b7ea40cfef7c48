//! Uniform, fixed-weight and message sampling from a SHAKE256 stream.

use super::{SamplingError, Xof};
use crate::costmodel::probe;
use crate::poly_ring::{DensePoly, SparsePoly};

/// Hard cap on raw draws for one fixed-weight vector.
pub const MAX_DRAWS: usize = 1_000_000;

const DRAW_BYTES: usize = 3;
const DRAW_RANGE: u32 = 1 << 24;

/// Largest multiple of `n` not exceeding 2^24; draws at or above it are rejected.
pub fn rejection_threshold(n: usize) -> u32 {
    assert!(n > 0 && n < DRAW_RANGE as usize);
    (DRAW_RANGE / n as u32) * n as u32
}

/// One raw draw as seen by the sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Draw {
    pub raw: u32,
    /// Whether the draw was below the threshold and not a duplicate.
    pub accepted: bool,
}

/// Branch-free `x mod n` for `x < 2^24`, via a multiply by `floor(2^32/n)`.
#[inline]
fn reduce_mod(x: u32, n: u32, multiplier: u64) -> u32 {
    let q = ((u64::from(x) * multiplier) >> 32) as u32;
    let r = x - q * n;
    // the estimate is short by at most one
    let ge = ((r.wrapping_sub(n) >> 31) ^ 1) & 1;
    r - (n & 0u32.wrapping_sub(ge))
}

/// Compare-exchange network sort; the access pattern depends only on the length.
fn ct_sort(v: &mut [u32]) {
    let len = v.len();
    for round in 0..len {
        let mut i = round & 1;
        while i + 1 < len {
            let (a, b) = (v[i], v[i + 1]);
            // all-ones when b < a
            let swap = 0u32.wrapping_sub(((u64::from(b).wrapping_sub(u64::from(a))) >> 63) as u32);
            let t = (a ^ b) & swap;
            v[i] = a ^ t;
            v[i + 1] = b ^ t;
            i += 2;
        }
    }
}

/// Draws `weight` distinct coordinates in `[0, n)` by rejection sampling.
pub fn sample_fixed_weight(xof: &mut Xof, weight: usize, n: usize) -> Result<SparsePoly, SamplingError> {
    sample_fixed_weight_traced(xof, weight, n, |_| {})
}

/// [`sample_fixed_weight`] reporting every raw draw to `observe`.
///
/// 24-bit little-endian integers are rejected at or above
/// [`rejection_threshold`], reduced mod n, and rejected again when already
/// present. The duplicate scan covers all `weight` slots on every draw; only
/// the number of iterations depends on the stream.
pub fn sample_fixed_weight_traced(
    xof: &mut Xof,
    weight: usize,
    n: usize,
    mut observe: impl FnMut(Draw),
) -> Result<SparsePoly, SamplingError> {
    assert!(weight <= n, "weight {weight} exceeds n = {n}");
    let threshold = rejection_threshold(n);
    let multiplier = (1u64 << 32) / n as u64;
    // unused slots hold n, which no reduced draw can equal
    let mut support = vec![n as u32; weight];
    let mut filled = 0usize;
    let mut draws = 0usize;
    let mut buf = [0u8; DRAW_BYTES];
    while filled < weight {
        if draws == MAX_DRAWS {
            return Err(SamplingError::Exhausted { draws });
        }
        xof.squeeze_into(&mut buf);
        draws += 1;
        let raw = u32::from(buf[0]) | u32::from(buf[1]) << 8 | u32::from(buf[2]) << 16;
        if raw >= threshold {
            observe(Draw { raw, accepted: false });
            continue;
        }
        let c = reduce_mod(raw, n as u32, multiplier);
        let mut dup = 0u32;
        for &s in &support {
            dup |= u32::from(s == c);
        }
        let accepted = dup == 0;
        if accepted {
            support[filled] = c;
            filled += 1;
        }
        observe(Draw { raw, accepted });
    }
    probe::record(|cnt| cnt.samples_drawn += draws as u64);
    ct_sort(&mut support);
    Ok(SparsePoly::new(n, support).expect("distinct in-range coordinates"))
}

/// Uniform ring element from `ceil(n/8)` output bytes.
pub fn sample_uniform(xof: &mut Xof, n: usize) -> DensePoly {
    let bytes = xof.squeeze(n.div_ceil(8));
    DensePoly::from_bytes_truncating(n, &bytes)
}

/// `k` uniform message bytes.
pub fn sample_message(xof: &mut Xof, k: usize) -> Vec<u8> {
    xof.squeeze(k)
}
