//! HQC public-key encryption and the IND-CCA2 KEM built on it.
//!
//! ```
//! use hqc_core::kem::Hqc;
//! use hqc_core::sampling::Seed;
//!
//! let kem = Hqc::hqc128();
//! let (pk, sk) = kem.keygen(&Seed([1; 40])).unwrap();
//! let (ct, ss) = kem.encaps(&pk, &Seed([2; 40])).unwrap();
//! assert_eq!(kem.decaps(&sk, &ct).unwrap(), ss);
//! ```

mod encoding;

use thiserror::Error;

use crate::codes::ConcatenatedCode;
use crate::params::{hqc128, ParamSet, Violation};
use crate::poly_ring::{ct_equal_bytes, dense_from_sparse, mul_sparse_dense, DensePoly, SparsePoly};
use crate::sampling::{
    domain, hash_g, hash_h, hash_k, sample_fixed_weight, sample_message, sample_uniform, xof_init,
    SamplingError, Seed, HASH_BYTES, SEED_BYTES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KemError {
    #[error("invalid parameter set: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidParams(Vec<Violation>),
    #[error("{what}: expected {expected} bytes, got {got}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("{what}: nonzero padding bits")]
    Padding { what: &'static str },
    #[error("ciphertext rejected")]
    Rejected,
    #[error(transparent)]
    Sampling(#[from] SamplingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub seed_h: Seed,
    pub s: DensePoly,
}

/// Secret key: the seed that regenerates (x, y), the expanded pair, and a
/// copy of the public key for re-encryption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey {
    pub seed_sk: Seed,
    pub x: SparsePoly,
    pub y: SparsePoly,
    pub pk: PublicKey,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub u: DensePoly,
    pub v: DensePoly,
    pub d: [u8; HASH_BYTES],
}

#[derive(Clone, PartialEq, Eq)]
pub struct SharedSecret(pub Vec<u8>);

impl SharedSecret {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for SharedSecret {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SharedSecret({})", hex::encode(&self.0))
    }
}

/// KEM instance bound to one validated parameter set.
#[derive(Debug, Clone)]
pub struct Hqc {
    params: ParamSet,
    code: ConcatenatedCode,
}

impl Hqc {
    pub fn new(params: ParamSet) -> Result<Self, KemError> {
        let violations = params.validate();
        if !violations.is_empty() {
            return Err(KemError::InvalidParams(violations));
        }
        assert_eq!(params.seed_bytes, SEED_BYTES, "seed length is fixed at {SEED_BYTES} bytes");
        assert!(params.ss_bytes <= HASH_BYTES);
        Ok(Hqc { params, code: ConcatenatedCode::new(params) })
    }

    pub fn hqc128() -> Self {
        Hqc::new(hqc128()).expect("shipped parameter set is valid")
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn code(&self) -> &ConcatenatedCode {
        &self.code
    }

    /// h from its seed.
    pub fn expand_h(&self, seed_h: &Seed) -> DensePoly {
        sample_uniform(&mut xof_init(seed_h, domain::SEED_EXPAND), self.params.n)
    }

    /// (x, y) from the secret seed.
    pub fn expand_secret(&self, seed_sk: &Seed) -> Result<(SparsePoly, SparsePoly), KemError> {
        let p = &self.params;
        let mut xof = xof_init(seed_sk, domain::SEED_EXPAND);
        let x = sample_fixed_weight(&mut xof, p.w, p.n)?;
        let y = sample_fixed_weight(&mut xof, p.w, p.n)?;
        Ok((x, y))
    }

    /// Key generation: `pk = (h, s = x + h*y)`, `sk = (x, y)`.
    pub fn keygen(&self, seed: &Seed) -> Result<(PublicKey, SecretKey), KemError> {
        let mut xof = xof_init(seed, domain::KEYGEN);
        let seed_sk = Seed::from_slice(&xof.squeeze(SEED_BYTES))?;
        let seed_h = Seed::from_slice(&xof.squeeze(SEED_BYTES))?;
        let h = self.expand_h(&seed_h);
        let (x, y) = self.expand_secret(&seed_sk)?;
        let mut s = mul_sparse_dense(&y, &h);
        s.add_assign(&dense_from_sparse(&x));
        let pk = PublicKey { seed_h, s };
        let sk = SecretKey { seed_sk, x, y, pk: pk.clone() };
        Ok((pk, sk))
    }

    /// Deterministic encryption of `m` under `pk` with randomness from `theta`:
    /// `u = r1 + h*r2`, `v = mG + s*r2 + e`.
    pub fn pke_encrypt(
        &self,
        pk: &PublicKey,
        m: &[u8],
        theta: &Seed,
    ) -> Result<(DensePoly, DensePoly), KemError> {
        let p = &self.params;
        assert_eq!(m.len(), p.k, "message length");
        let h = self.expand_h(&pk.seed_h);
        let mut xof = xof_init(theta, domain::THETA_EXPAND);
        let e = sample_fixed_weight(&mut xof, p.w_e, p.n)?;
        let r1 = sample_fixed_weight(&mut xof, p.w_r, p.n)?;
        let r2 = sample_fixed_weight(&mut xof, p.w_r, p.n)?;

        let mut u = mul_sparse_dense(&r2, &h);
        u.add_assign(&dense_from_sparse(&r1));

        let mut v = mul_sparse_dense(&r2, &pk.s);
        v.add_assign(&self.code.encode(m));
        v.add_assign(&dense_from_sparse(&e));
        Ok((u, v))
    }

    /// `C.Decode(v - u*y)`.
    pub fn pke_decrypt(&self, sk: &SecretKey, u: &DensePoly, v: &DensePoly) -> Vec<u8> {
        let mut t = mul_sparse_dense(&sk.y, u);
        t.add_assign(v);
        self.code.decode(&t)
    }

    fn shared_secret(&self, m: &[u8], u: &DensePoly, v: &DensePoly) -> SharedSecret {
        SharedSecret(hash_k(m, &u.to_bytes(), &v.to_bytes(), self.params.ss_bytes))
    }

    pub fn encaps(&self, pk: &PublicKey, coins: &Seed) -> Result<(Ciphertext, SharedSecret), KemError> {
        let m = sample_message(&mut xof_init(coins, domain::MESSAGE), self.params.k);
        let theta = hash_g(&m);
        let (u, v) = self.pke_encrypt(pk, &m, &theta)?;
        let d = hash_h(&m);
        let ss = self.shared_secret(&m, &u, &v);
        Ok((Ciphertext { u, v, d }, ss))
    }

    /// Decapsulation with re-encryption check. All three comparisons run in
    /// full before the verdict is taken.
    pub fn decaps(&self, sk: &SecretKey, ct: &Ciphertext) -> Result<SharedSecret, KemError> {
        let m = self.pke_decrypt(sk, &ct.u, &ct.v);
        let theta = hash_g(&m);
        let (u2, v2) = self.pke_encrypt(&sk.pk, &m, &theta)?;
        let d2 = hash_h(&m);
        let same_u = ct.u.ct_eq(&u2);
        let same_v = ct.v.ct_eq(&v2);
        let same_d = ct_equal_bytes(&ct.d, &d2);
        let ss = self.shared_secret(&m, &ct.u, &ct.v);
        if same_u & same_v & same_d {
            Ok(ss)
        } else {
            Err(KemError::Rejected)
        }
    }

    /// Key generation returning serialized `(pk, sk)`.
    pub fn keypair_bytes(&self, seed: &Seed) -> Result<(Vec<u8>, Vec<u8>), KemError> {
        let (pk, sk) = self.keygen(seed)?;
        Ok((pk.to_bytes(), sk.to_bytes()))
    }

    /// Encapsulation from a serialized public key to a serialized ciphertext.
    pub fn encaps_bytes(&self, pk: &[u8], coins: &Seed) -> Result<(Vec<u8>, SharedSecret), KemError> {
        let pk = self.public_key_from_bytes(pk)?;
        let (ct, ss) = self.encaps(&pk, coins)?;
        Ok((ct.to_bytes(), ss))
    }

    pub fn decaps_bytes(&self, sk: &[u8], ct: &[u8]) -> Result<SharedSecret, KemError> {
        let sk = self.secret_key_from_bytes(sk)?;
        let ct = self.ciphertext_from_bytes(ct)?;
        self.decaps(&sk, &ct)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_ring::add;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn seed(rng: &mut StdRng) -> Seed {
        let mut s = [0u8; SEED_BYTES];
        rng.fill(&mut s);
        Seed(s)
    }

    #[test]
    fn rejects_invalid_params() {
        let bad = ParamSet { n: 17664, ..hqc128() };
        assert!(matches!(Hqc::new(bad), Err(KemError::InvalidParams(_))));
    }

    #[test]
    fn keygen_shape_and_determinism() {
        let kem = Hqc::hqc128();
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..100 {
            let sd = seed(&mut rng);
            let (pk, sk) = kem.keygen(&sd).unwrap();
            assert_eq!(kem.keygen(&sd).unwrap(), (pk.clone(), sk.clone()));
            assert_eq!(sk.x.weight(), 66);
            assert_eq!(sk.y.weight(), 66);
            assert!(pk.s.is_canonical());
            let h = kem.expand_h(&pk.seed_h);
            let hy = mul_sparse_dense(&sk.y, &h);
            assert_eq!(add(&pk.s, &hy), dense_from_sparse(&sk.x));
        }
    }

    #[test]
    fn pke_roundtrip() {
        let kem = Hqc::hqc128();
        let mut rng = StdRng::seed_from_u64(72);
        for _ in 0..200 {
            let (pk, sk) = kem.keygen(&seed(&mut rng)).unwrap();
            let m: Vec<u8> = (0..16).map(|_| rng.random()).collect();
            let theta = seed(&mut rng);
            let (u, v) = kem.pke_encrypt(&pk, &m, &theta).unwrap();
            assert_eq!(kem.pke_encrypt(&pk, &m, &theta).unwrap(), (u.clone(), v.clone()));
            assert!(u.weight() > 0);
            assert_eq!(kem.pke_decrypt(&sk, &u, &v), m);
        }
    }

    #[test]
    fn noiseless_decrypt() {
        let kem = Hqc::hqc128();
        let (_, sk) = kem.keygen(&Seed([5; SEED_BYTES])).unwrap();
        let m = [0xA5u8; 16];
        let v = kem.code().encode(&m);
        assert_eq!(kem.pke_decrypt(&sk, &DensePoly::zero(17669), &v), m);
    }

    #[test]
    fn kem_roundtrip_and_rejection() {
        let kem = Hqc::hqc128();
        let mut rng = StdRng::seed_from_u64(73);
        let mut secrets = std::collections::HashSet::new();
        for _ in 0..50 {
            let (pk, sk) = kem.keygen(&seed(&mut rng)).unwrap();
            let coins = seed(&mut rng);
            let (ct, ss) = kem.encaps(&pk, &coins).unwrap();
            assert_eq!(kem.encaps(&pk, &coins).unwrap(), (ct.clone(), ss.clone()));
            assert_eq!(kem.decaps(&sk, &ct).unwrap(), ss);
            assert!(secrets.insert(ss.0.clone()));

            let mut bad = ct.clone();
            bad.u.flip_bit(rng.random_range(0..17669));
            assert_eq!(kem.decaps(&sk, &bad), Err(KemError::Rejected));
            let mut bad = ct.clone();
            bad.v.flip_bit(rng.random_range(0..17669));
            assert_eq!(kem.decaps(&sk, &bad), Err(KemError::Rejected));
            let mut bad = ct;
            bad.d[rng.random_range(0..64)] ^= 1 << rng.random_range(0..8);
            assert_eq!(kem.decaps(&sk, &bad), Err(KemError::Rejected));
        }
    }
}
