//! Arithmetic in GF(2^8) for the Reed-Solomon layer.
//!
//! The default multiplier is built from a fused carry-less multiply-add
//! ([`clmul_fma`]): one application forms the 15-bit product and two more fold
//! the high byte back with the reduction polynomial. It never indexes memory
//! with operand values. The exp/log tables are public-index helpers and the
//! reference multiplier [`mul_table`] used by tests.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use thiserror::Error;

use crate::costmodel::probe;

/// Field polynomial x^8 + x^4 + x^3 + x^2 + 1.
pub const FIELD_MODULUS: u16 = 0x11D;

/// `x^8 mod FIELD_MODULUS`, the fold-back constant.
const FOLD: u8 = (FIELD_MODULUS & 0xFF) as u8;

/// Multiplicative order of the field.
pub const ORDER: usize = 255;

/// One field element; bit i is the coefficient of x^i.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfElem(pub u8);

/// Primitive element alpha = x.
pub const ALPHA: GfElem = GfElem(0x02);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);
    pub const ONE: GfElem = GfElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

impl From<u8> for GfElem {
    fn from(v: u8) -> Self {
        GfElem(v)
    }
}

impl From<GfElem> for u8 {
    fn from(v: GfElem) -> Self {
        v.0
    }
}

impl Add for GfElem {
    type Output = GfElem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: GfElem) -> GfElem {
        GfElem(self.0 ^ rhs.0)
    }
}

impl AddAssign for GfElem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: GfElem) {
        self.0 ^= rhs.0;
    }
}

impl Mul for GfElem {
    type Output = GfElem;
    #[inline]
    fn mul(self, rhs: GfElem) -> GfElem {
        gf_mul(self, rhs)
    }
}

impl MulAssign for GfElem {
    #[inline]
    fn mul_assign(&mut self, rhs: GfElem) {
        *self = gf_mul(*self, rhs);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// Fused carry-less multiply-add on a 16-bit and an 8-bit word.
///
/// `a` is split into `a_hi = a[15..8]` and `a_lo = a[7..0]`; the result is
/// `a_hi * b + a_lo` as polynomials over F2, degree at most 14, with no field
/// reduction. Bit 15 of the result is always clear.
#[inline]
pub fn clmul_fma(a: u16, b: u8) -> u16 {
    let hi = a >> 8;
    let mut acc = a & 0xFF;
    for i in 0..8 {
        let mask = 0u16.wrapping_sub(u16::from((b >> i) & 1));
        acc ^= (hi << i) & mask;
    }
    acc
}

/// Product in GF(2^8) via three [`clmul_fma`] steps.
#[inline]
pub fn gf_mul(a: GfElem, b: GfElem) -> GfElem {
    probe::record(|c| c.gf_muls += 1);
    // degree <= 14
    let p = clmul_fma(u16::from(a.0) << 8, b.0);
    // fold bits 8..14: degree <= 6 + 4
    let p = clmul_fma(p, FOLD);
    // fold bits 8..10: degree <= 2 + 4
    let p = clmul_fma(p, FOLD);
    GfElem(p as u8)
}

/// `a^254`, which is `a^-1` for nonzero `a` and zero for zero. Fixed sequence
/// of 14 multiplications.
#[inline]
pub(crate) fn inverse_or_zero(a: GfElem) -> GfElem {
    let mut square = a;
    let mut acc = GfElem::ONE;
    for _ in 1..8 {
        square = gf_mul(square, square);
        acc = gf_mul(acc, square);
    }
    acc
}

/// Multiplicative inverse.
pub fn gf_inverse(a: GfElem) -> Result<GfElem, GfError> {
    if a.is_zero() {
        return Err(GfError::ZeroInverse);
    }
    Ok(inverse_or_zero(a))
}

/// Powers of alpha and their discrete logarithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpLogTables {
    /// `exp[i] = alpha^i`; `exp[255] = exp[0] = 1`.
    pub exp: [GfElem; 256],
    /// `log[exp[i]] = i` for `i < 255`. `log[0]` is meaningless and set to 0.
    pub log: [u8; 256],
}

/// Builds the tables by repeated doubling with a shift-and-conditional-xor
/// reduction; no use of [`clmul_fma`].
pub const fn build_exp_log_tables() -> ExpLogTables {
    let mut exp = [GfElem(0); 256];
    let mut log = [0u8; 256];
    let mut x: u16 = 1;
    let mut i = 0;
    while i < 256 {
        exp[i] = GfElem(x as u8);
        if i < ORDER {
            log[x as usize] = i as u8;
        }
        x <<= 1;
        if x & 0x100 != 0 {
            x ^= FIELD_MODULUS;
        }
        i += 1;
    }
    ExpLogTables { exp, log }
}

/// Shared table instance.
pub static TABLES: ExpLogTables = build_exp_log_tables();

/// `alpha^e` for a public exponent.
#[inline]
pub fn alpha_pow(e: usize) -> GfElem {
    TABLES.exp[e % ORDER]
}

/// Table-based product. Indexes memory with operand values, so it is kept
/// out of every secret-data path and serves as the reference multiplier.
pub fn mul_table(a: GfElem, b: GfElem) -> GfElem {
    if a.is_zero() || b.is_zero() {
        return GfElem::ZERO;
    }
    let e = TABLES.log[a.0 as usize] as usize + TABLES.log[b.0 as usize] as usize;
    TABLES.exp[e % ORDER]
}
