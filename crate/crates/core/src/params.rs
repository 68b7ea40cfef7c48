//! HQC parameter sets.
//!
//! Only the NIST level-1 set is shipped. Every other module reads its
//! constants from a [`ParamSet`] so that a correction lands in one place.

use std::fmt;

/// Upper bound on the Hamming weight of every sparse secret or error vector.
pub const MAX_SPARSE_WEIGHT: usize = 75;

/// Length of one RM(1,7) codeword in bits.
pub const RM_BASE_BITS: usize = 128;

/// All constants of one HQC parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamSet {
    /// Ring degree in bits; the ring is F2[X]/(X^n - 1).
    pub n: usize,
    /// Reed-Solomon code length in GF(2^8) symbols.
    pub n1: usize,
    /// Reed-Solomon dimension, which is also the message length in bytes.
    pub k: usize,
    /// Reed-Solomon symbol-error correction capability.
    pub delta: usize,
    /// Number of duplicated RM(1,7) copies per symbol.
    pub rm_multiplicity: usize,
    /// Duplicated Reed-Muller block length in bits.
    pub n2: usize,
    /// Weight of the secret polynomials x and y.
    pub w: usize,
    /// Weight of r1 and r2.
    pub w_r: usize,
    /// Weight of e.
    pub w_e: usize,
    pub seed_bytes: usize,
    pub ss_bytes: usize,
    /// `ceil(n / 64)`
    pub words_n: usize,
    /// `ceil(2n / 64)`
    pub words_2n: usize,
}

/// HQC-128 constants.
pub const HQC128: ParamSet = ParamSet {
    n: 17_669,
    n1: 46,
    k: 16,
    delta: 15,
    rm_multiplicity: 3,
    n2: 384,
    w: 66,
    w_r: 75,
    w_e: 75,
    seed_bytes: 40,
    ss_bytes: 64,
    words_n: 17_669usize.div_ceil(64),
    words_2n: (2 * 17_669usize).div_ceil(64),
};

/// Returns the HQC-128 parameter set.
pub fn hqc128() -> ParamSet {
    HQC128
}

/// A violated [`ParamSet`] invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    CodeExceedsRing { n1n2: usize, n: usize },
    EvenRingDegree { n: usize },
    WeightTooLarge { name: &'static str, weight: usize },
    WordCount { name: &'static str, expected: usize, got: usize },
    RmLength { expected: usize, got: usize },
    RsRedundancy { n1: usize, k: usize, delta: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::CodeExceedsRing { n1n2, n } => {
                write!(f, "n1 * n2 <= n violated: {n1n2} > {n}")
            }
            Violation::EvenRingDegree { n } => write!(f, "n must be odd (n = {n})"),
            Violation::WeightTooLarge { name, weight } => {
                write!(f, "{name} <= {MAX_SPARSE_WEIGHT} violated ({name} = {weight})")
            }
            Violation::WordCount { name, expected, got } => {
                write!(f, "{name} must be {expected}, got {got}")
            }
            Violation::RmLength { expected, got } => {
                write!(f, "n2 must be 128 * multiplicity = {expected}, got {got}")
            }
            Violation::RsRedundancy { n1, k, delta } => {
                write!(f, "n1 - k must equal 2 * delta ({n1} - {k} != 2 * {delta})")
            }
        }
    }
}

impl ParamSet {
    /// Returns every violated invariant; an empty list means the set is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n1n2 = self.n1 * self.n2;
        if n1n2 > self.n {
            out.push(Violation::CodeExceedsRing { n1n2, n: self.n });
        }
        if self.n.is_multiple_of(2) {
            out.push(Violation::EvenRingDegree { n: self.n });
        }
        for (name, weight) in [("w", self.w), ("w_r", self.w_r), ("w_e", self.w_e)] {
            if weight > MAX_SPARSE_WEIGHT {
                out.push(Violation::WeightTooLarge { name, weight });
            }
        }
        let words_n = self.n.div_ceil(64);
        if self.words_n != words_n {
            out.push(Violation::WordCount { name: "words_n", expected: words_n, got: self.words_n });
        }
        let words_2n = (2 * self.n).div_ceil(64);
        if self.words_2n != words_2n {
            out.push(Violation::WordCount {
                name: "words_2n",
                expected: words_2n,
                got: self.words_2n,
            });
        }
        let rm_len = RM_BASE_BITS * self.rm_multiplicity;
        if self.n2 != rm_len {
            out.push(Violation::RmLength { expected: rm_len, got: self.n2 });
        }
        if self.k > self.n1 || self.n1 - self.k != 2 * self.delta {
            out.push(Violation::RsRedundancy { n1: self.n1, k: self.k, delta: self.delta });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Bytes needed for one serialized ring element.
    pub fn poly_bytes(&self) -> usize {
        self.n.div_ceil(8)
    }

    /// Bit length of a concatenated codeword, `n1 * n2`.
    pub fn codeword_bits(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn public_key_bytes(&self) -> usize {
        self.seed_bytes + self.poly_bytes()
    }

    pub fn secret_key_bytes(&self) -> usize {
        self.seed_bytes + self.public_key_bytes()
    }

    pub fn ciphertext_bytes(&self) -> usize {
        2 * self.poly_bytes() + crate::sampling::HASH_BYTES
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hqc128_values() {
        let p = hqc128();
        assert_eq!(p.n, 17669);
        assert_eq!((p.n1, p.k, p.delta), (46, 16, 15));
        assert_eq!((p.rm_multiplicity, p.n2), (3, 384));
        assert_eq!((p.w, p.w_r, p.w_e), (66, 75, 75));
        assert_eq!((p.seed_bytes, p.ss_bytes), (40, 64));
        assert_eq!(p.n1 * p.n2, 17664);
        assert!(p.n1 * p.n2 <= p.n);
        assert_eq!(p.words_n, 277);
        assert_eq!(p.words_2n, 553);
    }

    #[test]
    fn shipped_set_is_valid() {
        assert_eq!(hqc128().validate(), vec![]);
    }

    #[test]
    fn even_n_rejected() {
        let p = ParamSet { n: 17664, ..hqc128() };
        let v = p.validate();
        assert!(v.contains(&Violation::EvenRingDegree { n: 17664 }));
        assert!(v.iter().any(|x| x.to_string() == "n must be odd (n = 17664)"));
    }

    #[test]
    fn heavy_weight_rejected() {
        let p = ParamSet { w: 80, ..hqc128() };
        let v = p.validate();
        assert_eq!(v, vec![Violation::WeightTooLarge { name: "w", weight: 80 }]);
        assert!(v[0].to_string().starts_with("w <= 75"));
    }

    #[test]
    fn collects_every_violation() {
        let p = ParamSet { n: 100, words_n: 1, w_e: 76, ..hqc128() };
        let v = p.validate();
        assert!(v.contains(&Violation::CodeExceedsRing { n1n2: 17664, n: 100 }));
        assert!(v.contains(&Violation::EvenRingDegree { n: 100 }));
        assert!(v.contains(&Violation::WeightTooLarge { name: "w_e", weight: 76 }));
        assert!(v.iter().any(|x| matches!(x, Violation::WordCount { name: "words_n", .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::WordCount { name: "words_2n", .. })));
    }

    #[test]
    fn validate_is_pure() {
        let p = ParamSet { n: 17664, w: 80, ..hqc128() };
        assert_eq!(p.validate(), p.validate());
    }

    #[test]
    fn serialized_sizes() {
        let p = hqc128();
        assert_eq!(p.poly_bytes(), 2209);
        assert_eq!(p.public_key_bytes(), 2249);
        assert_eq!(p.secret_key_bytes(), 2289);
        assert_eq!(p.ciphertext_bytes(), 4482);
    }
}
