//! Keccak-based randomness: SHAKE256 seed expansion, SHA3-512 hashes with
//! domain separation, and fixed-weight rejection sampling.

mod fixed_weight;
pub mod keccak;

use std::fmt;

use thiserror::Error;

pub use fixed_weight::{
    rejection_threshold, sample_fixed_weight, sample_fixed_weight_traced, sample_message,
    sample_uniform, Draw, MAX_DRAWS,
};
pub use keccak::{keccak_f1600, KeccakState, Sponge};

/// SHAKE256 rate in bytes.
pub const SHAKE256_RATE: usize = 136;
/// SHA3-512 rate in bytes.
pub const SHA3_512_RATE: usize = 72;
/// SHA3-512 digest length.
pub const HASH_BYTES: usize = 64;
/// Seed length shared by all seeds in the scheme.
pub const SEED_BYTES: usize = 40;

const SHAKE_SUFFIX: u8 = 0x1F;
const SHA3_SUFFIX: u8 = 0x06;

/// Domain-separation bytes, one per use site.
pub mod domain {
    /// Splits the key-generation seed into the secret and public seeds.
    pub const KEYGEN: u8 = 0x01;
    /// Expands seed_h into h and seed_sk into (x, y).
    pub const SEED_EXPAND: u8 = 0x02;
    pub const HASH_G: u8 = 0x03;
    pub const HASH_H: u8 = 0x04;
    pub const HASH_K: u8 = 0x05;
    /// Expands theta into (e, r1, r2) during encryption.
    pub const THETA_EXPAND: u8 = 0x06;
    /// Draws the encapsulated message from the caller's coins.
    pub const MESSAGE: u8 = 0x07;
    /// Chains per-record seeds in known-answer files.
    pub const KAT_CHAIN: u8 = 0x08;
    /// Derives per-record encapsulation coins in known-answer files.
    pub const KAT_COINS: u8 = 0x09;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("rejection sampling gave up after {draws} draws")]
    Exhausted { draws: usize },
    #[error("seed must be {SEED_BYTES} bytes, got {0}")]
    SeedLength(usize),
}

/// Raw seed material.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub [u8; SEED_BYTES]);

impl Seed {
    pub fn from_slice(bytes: &[u8]) -> Result<Seed, SamplingError> {
        let arr: [u8; SEED_BYTES] =
            bytes.try_into().map_err(|_| SamplingError::SeedLength(bytes.len()))?;
        Ok(Seed(arr))
    }

    pub fn as_bytes(&self) -> &[u8; SEED_BYTES] {
        &self.0
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({})", hex::encode(self.0))
    }
}

/// Incremental SHAKE256.
#[derive(Debug, Clone)]
pub struct Xof {
    sponge: Sponge,
}

impl Default for Xof {
    fn default() -> Self {
        Xof::new()
    }
}

impl Xof {
    pub fn new() -> Self {
        Xof { sponge: Sponge::new(SHAKE256_RATE, SHAKE_SUFFIX) }
    }

    /// Absorbs more input. Panics once output has been drawn.
    pub fn absorb(&mut self, data: &[u8]) {
        assert!(self.sponge.absorb(data), "absorb after squeeze");
    }

    pub fn finalize(&mut self) {
        self.sponge.finalize();
    }

    pub fn is_finalized(&self) -> bool {
        self.sponge.is_squeezing()
    }

    /// Position inside the current output block.
    pub fn position(&self) -> usize {
        self.sponge.position()
    }

    pub fn squeeze_into(&mut self, out: &mut [u8]) {
        self.sponge.squeeze(out);
    }

    pub fn squeeze(&mut self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.squeeze_into(&mut out);
        out
    }
}

/// Seed expander: absorbs `seed || domain` and finalizes.
pub fn xof_init(seed: &Seed, domain: u8) -> Xof {
    let mut x = Xof::new();
    x.absorb(&seed.0);
    x.absorb(&[domain]);
    x.finalize();
    x
}

/// SHA3-512 of the concatenated parts followed by the domain byte.
pub fn sha3_512_ds(parts: &[&[u8]], domain: u8) -> [u8; HASH_BYTES] {
    let mut s = Sponge::new(SHA3_512_RATE, SHA3_SUFFIX);
    for p in parts {
        let ok = s.absorb(p);
        debug_assert!(ok);
    }
    let ok = s.absorb(&[domain]);
    debug_assert!(ok);
    let mut out = [0u8; HASH_BYTES];
    s.squeeze(&mut out);
    out
}

/// G: message to encryption seed theta.
pub fn hash_g(m: &[u8]) -> Seed {
    let d = sha3_512_ds(&[m], domain::HASH_G);
    let mut s = [0u8; SEED_BYTES];
    s.copy_from_slice(&d[..SEED_BYTES]);
    Seed(s)
}

/// H: message digest carried in the ciphertext.
pub fn hash_h(m: &[u8]) -> [u8; HASH_BYTES] {
    sha3_512_ds(&[m], domain::HASH_H)
}

/// K: shared-secret derivation over `m || u || v`, truncated to `len` bytes.
pub fn hash_k(m: &[u8], u: &[u8], v: &[u8], len: usize) -> Vec<u8> {
    assert!(len <= HASH_BYTES);
    sha3_512_ds(&[m, u, v], domain::HASH_K)[..len].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use sha3::digest::{Digest, ExtendableOutput, Update, XofReader};

    fn random_seed(rng: &mut StdRng) -> Seed {
        let mut s = [0u8; SEED_BYTES];
        rng.fill(&mut s);
        Seed(s)
    }

    #[test]
    fn sha3_512_known_answer() {
        // SHA3-512("abc") with the standard 0x06 suffix: the domain byte here
        // is the last message byte, so hash "ab" with domain b'c'.
        let d = sha3_512_ds(&[b"ab"], b'c');
        assert_eq!(
            hex::encode(d),
            "b751850b1a57168a5693cd924b6b096e08f621827444f70d884f5d0240d2712e\
             10e116e9192af3c91a7ec57647e3934057340b4cf408d5a56592f8274eec53f0"
        );
    }

    #[test]
    fn shake_matches_reference_crate() {
        let mut rng = StdRng::seed_from_u64(21);
        for len in [0usize, 1, 40, 135, 136, 137, 300, 1000] {
            let mut input = vec![0u8; len];
            rng.fill(&mut input[..]);
            let mut ours = Xof::new();
            ours.absorb(&input);
            let got = ours.squeeze(500);
            let mut reference = sha3::Shake256::default();
            reference.update(&input);
            let mut want = vec![0u8; 500];
            reference.finalize_xof().read(&mut want);
            assert_eq!(got, want, "len {len}");
        }
    }

    #[test]
    fn sha3_matches_reference_crate() {
        let mut rng = StdRng::seed_from_u64(22);
        for len in [0usize, 16, 71, 72, 73, 4434] {
            let mut input = vec![0u8; len];
            rng.fill(&mut input[..]);
            let mut with_domain = input.clone();
            with_domain.push(domain::HASH_K);
            let want = sha3::Sha3_512::digest(&with_domain);
            assert_eq!(sha3_512_ds(&[&input], domain::HASH_K)[..], want[..]);
        }
    }

    #[test]
    fn xof_determinism_and_separation() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..100 {
            let seed = random_seed(&mut rng);
            let a = xof_init(&seed, domain::SEED_EXPAND).squeeze(64);
            let b = xof_init(&seed, domain::SEED_EXPAND).squeeze(64);
            let c = xof_init(&seed, domain::THETA_EXPAND).squeeze(64);
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn incremental_squeeze() {
        let seed = Seed([7; SEED_BYTES]);
        let whole = xof_init(&seed, 1).squeeze(64);
        let mut x = xof_init(&seed, 1);
        let mut parts = x.squeeze(32);
        parts.extend(x.squeeze(32));
        assert_eq!(parts, whole);

        let long = xof_init(&seed, 1).squeeze(137);
        let mut x = xof_init(&seed, 1);
        assert!(x.squeeze(0).is_empty());
        assert_eq!(x.squeeze(137), long);
    }

    #[test]
    fn long_stream() {
        let mut x = xof_init(&Seed([1; SEED_BYTES]), 2);
        let mut buf = [0u8; 1000];
        for _ in 0..1000 {
            x.squeeze_into(&mut buf);
            assert!(x.position() <= SHAKE256_RATE);
        }
    }

    #[test]
    fn random_partitions_agree() {
        let mut rng = StdRng::seed_from_u64(24);
        for _ in 0..500 {
            let len = rng.random_range(0..600);
            let mut input = vec![0u8; len];
            rng.fill(&mut input[..]);
            let mut whole = Xof::new();
            whole.absorb(&input);
            let want = whole.squeeze(400);

            let mut x = Xof::new();
            let mut rest = &input[..];
            while !rest.is_empty() {
                let k = rng.random_range(0..=rest.len());
                x.absorb(&rest[..k]);
                rest = &rest[k..];
            }
            let mut got = Vec::new();
            while got.len() < 400 {
                let k = rng.random_range(0..=400 - got.len());
                got.extend(x.squeeze(k));
            }
            assert_eq!(got, want);
        }
    }

    #[test]
    #[should_panic(expected = "absorb after squeeze")]
    fn absorb_after_finalize_panics() {
        let mut x = xof_init(&Seed([0; SEED_BYTES]), 0);
        x.absorb(b"late");
    }

    #[test]
    fn hashes_are_separated_and_sensitive() {
        let mut rng = StdRng::seed_from_u64(25);
        for _ in 0..1000 {
            let mut m = [0u8; 16];
            rng.fill(&mut m);
            let g = hash_g(&m);
            let h = hash_h(&m);
            let k = hash_k(&m, &[], &[], 64);
            assert_ne!(&g.0[..], &h[..SEED_BYTES]);
            assert_ne!(&h[..], &k[..]);
            assert_eq!(hash_g(&m), g);

            let bit = rng.random_range(0..128);
            let mut m2 = m;
            m2[bit / 8] ^= 1 << (bit % 8);
            assert_ne!(hash_g(&m2), g);
            assert_ne!(hash_h(&m2), h);
            assert_ne!(hash_k(&m2, &[], &[], 64), k);
        }
    }
}
