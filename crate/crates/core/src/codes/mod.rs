//! The public code C: Reed-Solomon outer code over GF(2^8) concatenated with
//! a duplicated RM(1,7) inner code.

pub mod rm;
pub mod rs;

pub use rm::{hadamard, peak_search, rm_decode, rm_encode, rm_fold, RmBlock, SoftVector};
pub use rs::{ReedSolomon, RsCodeword};

use crate::gf256::GfElem;
use crate::params::ParamSet;
use crate::poly_ring::DensePoly;

/// Encoder and decoder for one parameter set.
#[derive(Debug, Clone)]
pub struct ConcatenatedCode {
    params: ParamSet,
    rs: ReedSolomon,
}

impl ConcatenatedCode {
    pub fn new(params: ParamSet) -> Self {
        assert_eq!(params.n2 % 64, 0, "RM blocks must be word aligned");
        let rs = ReedSolomon::new(params.n1, params.k, params.delta);
        ConcatenatedCode { params, rs }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn reed_solomon(&self) -> &ReedSolomon {
        &self.rs
    }

    fn block_words(&self) -> usize {
        self.params.n2 / 64
    }

    /// `mG`: RS-encode, RM-encode every symbol, concatenate into the low
    /// `n1 * n2` bits of a ring element.
    pub fn encode(&self, m: &[u8]) -> DensePoly {
        let p = &self.params;
        let cw = self.rs.encode(m);
        let mut words = vec![0u64; p.words_n];
        let bw = self.block_words();
        for (i, &sym) in cw.symbols.iter().enumerate() {
            let block = rm::rm_encode(sym, p.rm_multiplicity);
            words[i * bw..(i + 1) * bw].copy_from_slice(block.words());
        }
        DensePoly::from_words(p.n, words).expect("codeword fits the ring")
    }

    /// Decodes the low `n1 * n2` bits; higher bits are ignored.
    pub fn decode(&self, noisy: &DensePoly) -> Vec<u8> {
        let p = &self.params;
        assert_eq!(noisy.n(), p.n, "ring degree mismatch");
        let bw = self.block_words();
        let symbols: Vec<GfElem> = noisy.words()[..p.n1 * bw]
            .chunks_exact(bw)
            .map(rm::rm_decode_words)
            .collect();
        self.rs.decode(&RsCodeword { symbols })
    }
}
