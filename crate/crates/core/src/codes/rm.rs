//! Duplicated first-order Reed-Muller code RM(1,7).
//!
//! Bit convention: symbol bit 0 is the constant term and bits 1..=7 weight
//! the seven coordinate functions. Codeword position `j` (0..128) evaluates
//! the affine form at the 7-bit vector `j`, least significant bit first:
//! `bit_j = m0 ^ parity((sym >> 1) & j)`. A block repeats the 128-bit word
//! `multiplicity` times.
//!
//! Decoding folds the copies into +-1 sums, applies a fast Walsh-Hadamard
//! transform and picks the peak; the index of the peak is the linear part and
//! its sign the constant term.

use crate::costmodel::probe;
use crate::gf256::GfElem;
use crate::params::RM_BASE_BITS;

const BASE_WORDS: usize = RM_BASE_BITS / 64;

/// Positions `j < 64` whose coordinate bit `b` is set, for `b < 6`.
const COORD_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// One duplicated codeword, `multiplicity` copies of 128 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmBlock {
    words: Vec<u64>,
}

impl RmBlock {
    pub fn from_words(words: Vec<u64>) -> Self {
        assert!(!words.is_empty() && words.len().is_multiple_of(BASE_WORDS), "block must hold whole copies");
        RmBlock { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn multiplicity(&self) -> usize {
        self.words.len() / BASE_WORDS
    }

    pub fn len_bits(&self) -> usize {
        self.words.len() * 64
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn flip_bit(&mut self, i: usize) {
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    /// The 128-bit copy with index `copy`.
    pub fn copy_words(&self, copy: usize) -> [u64; 2] {
        [self.words[2 * copy], self.words[2 * copy + 1]]
    }
}

/// Soft values for the 128 codeword positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SoftVector(pub [i32; RM_BASE_BITS]);

impl Default for SoftVector {
    fn default() -> Self {
        SoftVector([0; RM_BASE_BITS])
    }
}

/// Single RM(1,7) codeword for `sym`, branch-free.
pub fn rm_encode_base(sym: GfElem) -> [u64; 2] {
    let s = u64::from(sym.0);
    let constant = 0u64.wrapping_sub(s & 1);
    let mut lo = constant;
    let mut hi = constant;
    for (b, &m) in COORD_MASKS.iter().enumerate() {
        let coef = 0u64.wrapping_sub((s >> (b + 1)) & 1);
        lo ^= m & coef;
        hi ^= m & coef;
    }
    // coordinate 7 selects the upper 64 positions
    hi ^= 0u64.wrapping_sub((s >> 7) & 1);
    [lo, hi]
}

pub fn rm_encode(sym: GfElem, multiplicity: usize) -> RmBlock {
    let base = rm_encode_base(sym);
    let mut words = Vec::with_capacity(BASE_WORDS * multiplicity);
    for _ in 0..multiplicity {
        words.extend_from_slice(&base);
    }
    RmBlock { words }
}

/// Folds copies: `multiplicity - 2 * (copies with the bit set)` per position.
pub fn rm_fold_words(words: &[u64]) -> SoftVector {
    let copies = words.len() / BASE_WORDS;
    let mut out = SoftVector::default();
    for (p, v) in out.0.iter_mut().enumerate() {
        let (w, b) = (p >> 6, p & 63);
        let mut set = 0i32;
        for c in 0..copies {
            set += ((words[BASE_WORDS * c + w] >> b) & 1) as i32;
        }
        *v = copies as i32 - 2 * set;
    }
    out
}

pub fn rm_fold(block: &RmBlock) -> SoftVector {
    rm_fold_words(&block.words)
}

/// Fast Walsh-Hadamard transform: seven butterfly stages `(a, b) -> (a + b, a - b)`.
pub fn hadamard(v: &SoftVector) -> SoftVector {
    let mut t = *v;
    let mut half = 1;
    while half < RM_BASE_BITS {
        for start in (0..RM_BASE_BITS).step_by(2 * half) {
            for i in start..start + half {
                let (a, b) = (t.0[i], t.0[i + half]);
                t.0[i] = a + b;
                t.0[i + half] = a - b;
            }
        }
        half *= 2;
    }
    t
}

/// Index of the largest magnitude (lowest index on ties) and its sign,
/// mapped back to a symbol. Fixed work per element.
pub fn peak_search(t: &SoftVector) -> GfElem {
    let mut best_abs = -1i32;
    let mut best_idx = 0i32;
    let mut best_neg = 0i32;
    for (j, &v) in t.0.iter().enumerate() {
        let abs = v.abs();
        // all-ones when abs > best_abs
        let take = (best_abs - abs) >> 31;
        best_abs = (abs & take) | (best_abs & !take);
        best_idx = (j as i32 & take) | (best_idx & !take);
        let neg = (v >> 31) & 1;
        best_neg = (neg & take) | (best_neg & !take);
    }
    GfElem(((best_idx << 1) | best_neg) as u8)
}

/// Maximum-likelihood decoding of one block given as raw words.
pub fn rm_decode_words(words: &[u64]) -> GfElem {
    probe::record(|c| c.rm_blocks_decoded += 1);
    peak_search(&hadamard(&rm_fold_words(words)))
}

pub fn rm_decode(block: &RmBlock) -> GfElem {
    rm_decode_words(&block.words)
}
