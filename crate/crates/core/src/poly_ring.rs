//! Arithmetic in R = F2[X]/(X^n - 1).
//!
//! Dense elements are packed little-endian: bit i of the polynomial is bit
//! `i & 63` of word `i >> 6`, which is also bit `i & 7` of byte `i >> 3` once
//! serialized. Sparse elements are sorted support lists.
//!
//! Multiplication is always sparse times dense. Every support coordinate
//! `c = 64q + r` XORs the dense operand, shifted left by `r` with inter-word
//! carry, into a double-width accumulator starting at word `q`; the
//! accumulator is folded modulo X^n - 1 at the end. Each coordinate touches
//! exactly `words_n + 1` accumulator words.

use rand::Rng;
use thiserror::Error;

use crate::costmodel::probe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} bytes, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("padding bits above degree n are not zero")]
    NonzeroPadding,
    #[error("support coordinate {coord} out of range for n = {n}")]
    CoordinateOutOfRange { coord: u32, n: usize },
    #[error("support is not strictly increasing")]
    UnsortedSupport,
    #[error("bits above the canonical range are set")]
    NotCanonical,
}

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Mask of the valid bits in the last word of an `n`-bit element.
#[inline]
fn last_word_mask(n: usize) -> u64 {
    match n & 63 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// All-ones when `a == b`, zero otherwise, without branching.
#[inline]
fn eq_mask(a: u64, b: u64) -> u64 {
    let x = a ^ b;
    // top bit of (x | -x) is set iff x != 0
    ((x | x.wrapping_neg()) >> 63).wrapping_sub(1)
}

/// Ring element as packed 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    n: usize,
    words: Vec<u64>,
}

impl DensePoly {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "ring degree must be positive");
        DensePoly { n, words: vec![0; words_for(n)] }
    }

    /// Wraps words that must already be canonical.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self, PolyError> {
        if words.len() != words_for(n) {
            return Err(PolyError::WrongLength { expected: words_for(n), got: words.len() });
        }
        let p = DensePoly { n, words };
        if !p.is_canonical() {
            return Err(PolyError::NotCanonical);
        }
        Ok(p)
    }

    /// Builds an element from the first `ceil(n/8)` little-endian bytes of
    /// `bytes`, clearing anything at or above degree n. Used to turn XOF
    /// output into a uniform element.
    pub fn from_bytes_truncating(n: usize, bytes: &[u8]) -> Self {
        let mut p = DensePoly::zero(n);
        let len = n.div_ceil(8);
        assert!(bytes.len() >= len, "need {len} bytes, got {}", bytes.len());
        load_le_bytes(&mut p.words, &bytes[..len]);
        p.canonicalize();
        p
    }

    /// Strict deserialization: exact length and zero padding.
    pub fn from_bytes(n: usize, bytes: &[u8]) -> Result<Self, PolyError> {
        let len = n.div_ceil(8);
        if bytes.len() != len {
            return Err(PolyError::WrongLength { expected: len, got: bytes.len() });
        }
        let mut p = DensePoly::zero(n);
        load_le_bytes(&mut p.words, bytes);
        if !p.is_canonical() {
            return Err(PolyError::NonzeroPadding);
        }
        Ok(p)
    }

    /// Serializes into `out`, which must hold exactly `ceil(n/8)` bytes.
    pub fn write_bytes(&self, out: &mut [u8]) {
        let len = self.n.div_ceil(8);
        assert_eq!(out.len(), len, "output buffer length");
        for (chunk, w) in out.chunks_mut(8).zip(&self.words) {
            chunk.copy_from_slice(&w.to_le_bytes()[..chunk.len()]);
        }
        probe::record(|c| c.bytes_copied += len as u64);
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.n.div_ceil(8)];
        self.write_bytes(&mut out);
        out
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = DensePoly::zero(n);
        rng.fill(&mut p.words[..]);
        p.canonicalize();
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.n);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn flip_bit(&mut self, i: usize) {
        assert!(i < self.n);
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    /// True when every bit at or above degree n is clear.
    pub fn is_canonical(&self) -> bool {
        let last = self.words.len() - 1;
        self.words[last] & !last_word_mask(self.n) == 0
    }

    fn canonicalize(&mut self) {
        let last = self.words.len() - 1;
        self.words[last] &= last_word_mask(self.n);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight over the n coefficient bits.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place `self += other`.
    pub fn add_assign(&mut self, other: &DensePoly) {
        assert_eq!(self.n, other.n, "ring degree mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        probe::record(|c| c.ring_adds += 1);
    }

    /// Word-at-a-time comparison that always scans the full length.
    pub fn ct_eq(&self, other: &DensePoly) -> bool {
        assert_eq!(self.n, other.n, "ring degree mismatch");
        ct_equal_words(&self.words, &other.words)
    }
}

fn load_le_bytes(words: &mut [u64], bytes: &[u8]) {
    for (w, chunk) in words.iter_mut().zip(bytes.chunks(8)) {
        let mut buf = [0u8; 8];
        buf[..chunk.len()].copy_from_slice(chunk);
        *w = u64::from_le_bytes(buf);
    }
    probe::record(|c| c.bytes_copied += bytes.len() as u64);
}

/// `a + b` in R.
pub fn add(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut out = a.clone();
    out.add_assign(b);
    out
}

/// Ring element given by its support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    n: usize,
    support: Vec<u32>,
}

impl SparsePoly {
    /// Validates that the support is strictly increasing and inside `[0, n)`.
    pub fn new(n: usize, support: Vec<u32>) -> Result<Self, PolyError> {
        if let Some(&coord) = support.iter().find(|&&c| c as usize >= n) {
            return Err(PolyError::CoordinateOutOfRange { coord, n });
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PolyError::UnsortedSupport);
        }
        Ok(SparsePoly { n, support })
    }

    /// Uniform random support of the given weight. Not constant time; for
    /// tests and tooling, the KEM uses `sampling::sample_fixed_weight`.
    pub fn random<R: Rng + ?Sized>(n: usize, weight: usize, rng: &mut R) -> Self {
        assert!(weight <= n);
        let mut support = rand::seq::index::sample(rng, n, weight)
            .into_iter()
            .map(|c| c as u32)
            .collect::<Vec<_>>();
        support.sort_unstable();
        SparsePoly { n, support }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

/// Densifies a sparse element. Every coordinate visits every word, so the
/// memory access pattern does not depend on the support.
pub fn dense_from_sparse(s: &SparsePoly) -> DensePoly {
    let mut d = DensePoly::zero(s.n);
    for &c in &s.support {
        let q = u64::from(c >> 6);
        let bit = 1u64 << (c & 63);
        for (j, w) in d.words.iter_mut().enumerate() {
            *w |= bit & eq_mask(j as u64, q);
        }
    }
    d
}

/// Pre-reduction product of degree below 2n - 1.
///
/// Holds `ceil(2n/64)` words plus one trailing guard word that receives the
/// (always zero) carry of the highest coordinate, so every coordinate step
/// writes the same number of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductAccumulator {
    n: usize,
    words: Vec<u64>,
}

impl ProductAccumulator {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "ring degree must be positive");
        let len = words_for(2 * n) + 1;
        probe::record(|c| c.bytes_copied += 8 * len as u64);
        ProductAccumulator { n, words: vec![0; len] }
    }

    /// Accumulator from explicit words; bits at or above 2n - 1 must be clear.
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self, PolyError> {
        let mut acc = ProductAccumulator::new(n);
        let expected = words_for(2 * n);
        if words.len() != expected {
            return Err(PolyError::WrongLength { expected, got: words.len() });
        }
        acc.words[..expected].copy_from_slice(words);
        if !acc.is_bounded() {
            return Err(PolyError::NotCanonical);
        }
        Ok(acc)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The `ceil(2n/64)` payload words (guard excluded).
    pub fn words(&self) -> &[u64] {
        &self.words[..self.words.len() - 1]
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// True when no bit at position 2n - 1 or above is set.
    pub fn is_bounded(&self) -> bool {
        let limit = 2 * self.n - 1;
        (0..self.words.len()).all(|j| {
            let lo = j * 64;
            let w = self.words[j];
            if lo + 64 <= limit {
                true
            } else if lo >= limit {
                w == 0
            } else {
                w >> (limit - lo) == 0
            }
        })
    }

    /// XORs `X^c * d` into the accumulator (one coordinate step).
    pub fn add_shifted(&mut self, d: &DensePoly, c: u32) {
        assert_eq!(d.n, self.n, "ring degree mismatch");
        debug_assert!((c as usize) < self.n);
        let q = (c >> 6) as usize;
        let r = c & 63;
        let wn = d.words.len();
        let dst = &mut self.words[q..q + wn + 1];
        let mut carry = 0u64;
        for (slot, &w) in dst.iter_mut().zip(&d.words) {
            *slot ^= (w << r) | carry;
            // w >> (64 - r), written so that r = 0 yields 0
            carry = (w >> 1) >> (63 - r);
        }
        dst[wn] ^= carry;
        probe::record(|cnt| cnt.ring_word_ops += (wn + 1) as u64);
    }

    /// Folds modulo X^n - 1: bit i of the result is bit i XOR bit n + i.
    pub fn reduce(&self) -> DensePoly {
        let n = self.n;
        let wn = words_for(n);
        let base = n >> 6;
        let s = (n & 63) as u32;
        let mut out = DensePoly::zero(n);
        for (j, o) in out.words.iter_mut().enumerate() {
            let lo = self.words[base + j];
            let hi = self.words[base + j + 1];
            let upper = (lo >> s) | ((hi << 1) << (63 - s));
            *o = self.words[j] ^ upper;
        }
        out.canonicalize();
        debug_assert_eq!(self.words[self.words.len() - 1], 0, "guard word touched");
        probe::record(|c| c.ring_word_ops += wn as u64);
        out
    }
}

/// `s * d mod (X^n - 1)` by word-shifted accumulation.
pub fn mul_sparse_dense(s: &SparsePoly, d: &DensePoly) -> DensePoly {
    assert_eq!(s.n, d.n, "ring degree mismatch");
    let mut acc = ProductAccumulator::new(d.n);
    for &c in &s.support {
        acc.add_shifted(d, c);
    }
    probe::record(|c| {
        c.ring_muls += 1;
        c.ring_coordinates += s.support.len() as u64;
    });
    acc.reduce()
}

/// Constant-time equality of word slices; returns the verdict and the number
/// of word pairs visited, which is always the full length.
pub fn ct_equal_words_counted(a: &[u64], b: &[u64]) -> (bool, usize) {
    assert_eq!(a.len(), b.len(), "length mismatch");
    let mut diff = 0u64;
    let mut visits = 0usize;
    for (x, y) in a.iter().zip(b) {
        diff |= x ^ y;
        visits += 1;
    }
    (std::hint::black_box(diff) == 0, visits)
}

pub fn ct_equal_words(a: &[u64], b: &[u64]) -> bool {
    ct_equal_words_counted(a, b).0
}

/// Constant-time equality of byte strings, compared eight bytes at a time.
/// Returns the verdict and the number of words visited, `ceil(len/8)`.
pub fn ct_equal_bytes_counted(a: &[u8], b: &[u8]) -> (bool, usize) {
    assert_eq!(a.len(), b.len(), "length mismatch");
    let mut diff = 0u64;
    let mut visits = 0usize;
    for (x, y) in a.chunks(8).zip(b.chunks(8)) {
        let mut bx = [0u8; 8];
        let mut by = [0u8; 8];
        bx[..x.len()].copy_from_slice(x);
        by[..y.len()].copy_from_slice(y);
        diff |= u64::from_le_bytes(bx) ^ u64::from_le_bytes(by);
        visits += 1;
    }
    (std::hint::black_box(diff) == 0, visits)
}

pub fn ct_equal_bytes(a: &[u8], b: &[u8]) -> bool {
    ct_equal_bytes_counted(a, b).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Bit-level schoolbook product reduced coefficient by coefficient.
    fn schoolbook(a: &DensePoly, b: &DensePoly) -> DensePoly {
        let n = a.n();
        let mut bits = vec![false; n];
        for i in (0..n).filter(|&i| a.bit(i)) {
            for j in (0..n).filter(|&j| b.bit(j)) {
                bits[(i + j) % n] ^= true;
            }
        }
        let mut out = DensePoly::zero(n);
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            out.flip_bit(i);
        }
        out
    }

    /// Per-bit modular fold of an accumulator.
    fn naive_reduce(acc: &ProductAccumulator) -> DensePoly {
        let n = acc.n();
        let mut out = DensePoly::zero(n);
        for i in 0..2 * n - 1 {
            if acc.bit(i) {
                out.flip_bit(i % n);
            }
        }
        out
    }

    #[test]
    fn densify() {
        let n = 97;
        assert!(dense_from_sparse(&SparsePoly::new(n, vec![]).unwrap()).is_zero());
        let d = dense_from_sparse(&SparsePoly::new(n, vec![0]).unwrap());
        assert_eq!(d.words(), &[1, 0]);
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..1000 {
            let w = rng.random_range(0..40);
            let s = SparsePoly::random(n, w, &mut rng);
            let d = dense_from_sparse(&s);
            assert_eq!(d.weight(), s.weight());
            assert!(s.support().iter().all(|&c| d.bit(c as usize)));
        }
    }

    #[test]
    fn sparse_validation() {
        assert_eq!(
            SparsePoly::new(7, vec![1, 7]),
            Err(PolyError::CoordinateOutOfRange { coord: 7, n: 7 })
        );
        assert_eq!(SparsePoly::new(7, vec![3, 3]), Err(PolyError::UnsortedSupport));
        assert_eq!(SparsePoly::new(7, vec![4, 2]), Err(PolyError::UnsortedSupport));
    }

    #[test]
    fn add_identities() {
        let mut rng = StdRng::seed_from_u64(2);
        let zero = DensePoly::zero(257);
        for _ in 0..1000 {
            let a = DensePoly::random(257, &mut rng);
            let b = DensePoly::random(257, &mut rng);
            assert_eq!(add(&a, &zero), a);
            assert!(add(&a, &a).is_zero());
            assert_eq!(add(&a, &b), add(&b, &a));
            assert!(add(&a, &b).is_canonical());
        }
    }

    #[test]
    #[should_panic(expected = "ring degree mismatch")]
    fn add_rejects_mismatched_degree() {
        add(&DensePoly::zero(97), &DensePoly::zero(257));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let mut rng = StdRng::seed_from_u64(3);
        let d = DensePoly::random(17669, &mut rng);
        let one = SparsePoly::new(17669, vec![0]).unwrap();
        assert_eq!(mul_sparse_dense(&one, &d), d);
    }

    #[test]
    fn single_shift_wraps_at_n7() {
        let s = SparsePoly::new(7, vec![1]).unwrap();
        let mut d = DensePoly::zero(7);
        d.flip_bit(0);
        d.flip_bit(6);
        let p = mul_sparse_dense(&s, &d);
        assert_eq!(p.words(), &[0b11]);
    }

    #[test]
    fn mul_matches_schoolbook_small() {
        let mut rng = StdRng::seed_from_u64(4);
        for &n in &[7usize, 63, 64, 65, 97, 127, 128, 129, 257] {
            for _ in 0..200 {
                let w = rng.random_range(0..=n.min(20));
                let s = SparsePoly::random(n, w, &mut rng);
                let d = DensePoly::random(n, &mut rng);
                let p = mul_sparse_dense(&s, &d);
                assert_eq!(p, schoolbook(&dense_from_sparse(&s), &d), "n = {n}");
                assert!(p.is_canonical());
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let n = 97;
        let mut acc = ProductAccumulator::new(n);
        acc.words[n >> 6] |= 1 << (n & 63);
        let r = acc.reduce();
        assert_eq!(r.words(), &[1, 0]);

        let mut rng = StdRng::seed_from_u64(5);
        let d = DensePoly::random(n, &mut rng);
        let mut words = vec![0u64; words_for(2 * n)];
        words[..d.words().len()].copy_from_slice(d.words());
        let acc = ProductAccumulator::from_words(n, &words).unwrap();
        assert_eq!(acc.reduce(), d);
    }

    #[test]
    fn reduce_matches_naive_fold() {
        let mut rng = StdRng::seed_from_u64(6);
        for &n in &[7usize, 97, 257, 17669] {
            for _ in 0..(if n > 1000 { 20 } else { 1000 }) {
                let mut words: Vec<u64> = (0..words_for(2 * n)).map(|_| rng.random()).collect();
                let limit = 2 * n - 1;
                for (j, w) in words.iter_mut().enumerate() {
                    let lo = j * 64;
                    if lo >= limit {
                        *w = 0;
                    } else if lo + 64 > limit {
                        *w &= (1u64 << (limit - lo)) - 1;
                    }
                }
                let acc = ProductAccumulator::from_words(n, &words).unwrap();
                assert_eq!(acc.reduce(), naive_reduce(&acc));
            }
        }
    }

    #[test]
    fn accumulator_rejects_high_bits() {
        let n = 97;
        let mut words = vec![0u64; words_for(2 * n)];
        words[(2 * n - 1) >> 6] |= 1 << ((2 * n - 1) & 63);
        assert_eq!(ProductAccumulator::from_words(n, &words), Err(PolyError::NotCanonical));
    }

    #[test]
    fn accumulator_stays_bounded() {
        let mut rng = StdRng::seed_from_u64(7);
        for &n in &[7usize, 97, 257, 17669] {
            let d = DensePoly::random(n, &mut rng);
            let mut acc = ProductAccumulator::new(n);
            for c in [0, n as u32 - 1, (n as u32) / 2, n as u32 - 2] {
                acc.add_shifted(&d, c);
                assert!(acc.is_bounded());
                assert_eq!(*acc.words.last().unwrap(), 0);
            }
        }
    }

    #[test]
    fn weight_matches_bit_loop() {
        let mut rng = StdRng::seed_from_u64(8);
        assert_eq!(DensePoly::zero(97).weight(), 0);
        for _ in 0..1000 {
            let d = DensePoly::random(257, &mut rng);
            assert_eq!(d.weight(), (0..257).filter(|&i| d.bit(i)).count());
        }
    }

    #[test]
    fn ct_equal_flip_sweep() {
        let mut rng = StdRng::seed_from_u64(9);
        let a = DensePoly::random(128, &mut rng);
        assert!(a.ct_eq(&a));
        for i in 0..128 {
            let mut b = a.clone();
            b.flip_bit(i);
            assert!(!a.ct_eq(&b), "bit {i}");
        }
        let bytes = a.to_bytes();
        for i in 0..128 {
            let mut b = bytes.clone();
            b[i / 8] ^= 1 << (i % 8);
            assert!(!ct_equal_bytes(&bytes, &b));
        }
    }

    #[test]
    fn ct_equal_scans_everything() {
        let a = vec![0u64; 277];
        let mut b = a.clone();
        b[0] = 1;
        assert_eq!(ct_equal_words_counted(&a, &b), (false, 277));
        let x = vec![0u8; 2209];
        let mut y = x.clone();
        y[0] = 1;
        assert_eq!(ct_equal_bytes_counted(&x, &y), (false, 277));
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn ct_equal_length_mismatch() {
        ct_equal_bytes(&[0; 3], &[0; 4]);
    }

    #[test]
    fn byte_layout() {
        let mut p = DensePoly::zero(17669);
        p.flip_bit(0);
        p.flip_bit(9);
        p.flip_bit(17668);
        let b = p.to_bytes();
        assert_eq!(b.len(), 2209);
        assert_eq!(b[0], 0x01);
        assert_eq!(b[1], 0x02);
        assert_eq!(b[2208], 1 << (17668 % 8));
        assert_eq!(DensePoly::from_bytes(17669, &b).unwrap(), p);
    }

    #[test]
    fn strict_deserialization() {
        let mut b = vec![0u8; 2209];
        b[2208] = 0x20;
        assert_eq!(DensePoly::from_bytes(17669, &b), Err(PolyError::NonzeroPadding));
        assert_eq!(
            DensePoly::from_bytes(17669, &b[..100]),
            Err(PolyError::WrongLength { expected: 2209, got: 100 })
        );
        let t = DensePoly::from_bytes_truncating(17669, &b);
        assert!(t.is_zero());
    }

    fn sparse_strategy(n: usize, max_w: usize) -> impl Strategy<Value = SparsePoly> {
        prop::collection::btree_set(0..n as u32, 0..=max_w)
            .prop_map(move |s| SparsePoly::new(n, s.into_iter().collect()).unwrap())
    }

    fn dense_strategy(n: usize) -> impl Strategy<Value = DensePoly> {
        prop::collection::vec(any::<u64>(), words_for(n)).prop_map(move |mut w| {
            let last = w.len() - 1;
            w[last] &= last_word_mask(n);
            DensePoly::from_words(n, w).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in dense_strategy(97), b in dense_strategy(97), c in dense_strategy(97),
                     s in sparse_strategy(97, 20)) {
            prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
            prop_assert_eq!(
                mul_sparse_dense(&s, &add(&a, &b)),
                add(&mul_sparse_dense(&s, &a), &mul_sparse_dense(&s, &b))
            );
        }

        #[test]
        fn mul_is_sum_of_monomials(s in sparse_strategy(257, 30), d in dense_strategy(257)) {
            let mut sum = DensePoly::zero(257);
            for &c in s.support() {
                sum.add_assign(&mul_sparse_dense(&SparsePoly::new(257, vec![c]).unwrap(), &d));
            }
            prop_assert_eq!(mul_sparse_dense(&s, &d), sum);
        }

        #[test]
        fn bytes_roundtrip(d in dense_strategy(17669)) {
            prop_assert_eq!(DensePoly::from_bytes(17669, &d.to_bytes()).unwrap(), d);
        }
    }
}
