//! Byte formats.
//!
//! - public key: `seed_h (40) || s (ceil(n/8))`
//! - secret key: `seed_sk (40) || public key`
//! - ciphertext: `u (ceil(n/8)) || v (ceil(n/8)) || d (64)`
//!
//! Polynomials are little-endian bit strings with zero padding; a set pad
//! bit is a format error.

use super::{Ciphertext, Hqc, KemError, PublicKey, SecretKey};
use crate::costmodel::probe;
use crate::poly_ring::{DensePoly, PolyError};
use crate::sampling::{Seed, HASH_BYTES, SEED_BYTES};

fn append(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(bytes);
    probe::record(|c| c.bytes_copied += bytes.len() as u64);
}

fn append_poly(out: &mut Vec<u8>, p: &DensePoly) {
    let start = out.len();
    out.resize(start + p.n().div_ceil(8), 0);
    p.write_bytes(&mut out[start..]);
}

fn check_len(what: &'static str, bytes: &[u8], expected: usize) -> Result<(), KemError> {
    if bytes.len() != expected {
        return Err(KemError::Length { what, expected, got: bytes.len() });
    }
    Ok(())
}

fn poly(what: &'static str, n: usize, bytes: &[u8]) -> Result<DensePoly, KemError> {
    DensePoly::from_bytes(n, bytes).map_err(|e| match e {
        PolyError::WrongLength { expected, got } => KemError::Length { what, expected, got },
        _ => KemError::Padding { what },
    })
}

fn seed(bytes: &[u8]) -> Seed {
    probe::record(|c| c.bytes_copied += SEED_BYTES as u64);
    Seed::from_slice(bytes).expect("caller checked length")
}

impl PublicKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(SEED_BYTES + self.s.n().div_ceil(8));
        self.write_into(&mut out);
        out
    }

    fn write_into(&self, out: &mut Vec<u8>) {
        append(out, &self.seed_h.0);
        append_poly(out, &self.s);
    }
}

impl SecretKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * SEED_BYTES + self.pk.s.n().div_ceil(8));
        append(&mut out, &self.seed_sk.0);
        self.pk.write_into(&mut out);
        out
    }
}

impl Ciphertext {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * self.u.n().div_ceil(8) + HASH_BYTES);
        append_poly(&mut out, &self.u);
        append_poly(&mut out, &self.v);
        append(&mut out, &self.d);
        out
    }
}

impl Hqc {
    pub fn public_key_from_bytes(&self, bytes: &[u8]) -> Result<PublicKey, KemError> {
        let p = &self.params;
        check_len("public key", bytes, p.public_key_bytes())?;
        let (sd, s) = bytes.split_at(SEED_BYTES);
        Ok(PublicKey { seed_h: seed(sd), s: poly("public key", p.n, s)? })
    }

    /// Parses a secret key and regenerates (x, y) from its seed.
    pub fn secret_key_from_bytes(&self, bytes: &[u8]) -> Result<SecretKey, KemError> {
        let p = &self.params;
        check_len("secret key", bytes, p.secret_key_bytes())?;
        let (sd, pk) = bytes.split_at(SEED_BYTES);
        let pk = self.public_key_from_bytes(pk).map_err(|e| match e {
            KemError::Padding { .. } => KemError::Padding { what: "secret key" },
            other => other,
        })?;
        let seed_sk = seed(sd);
        let (x, y) = self.expand_secret(&seed_sk)?;
        Ok(SecretKey { seed_sk, x, y, pk })
    }

    pub fn ciphertext_from_bytes(&self, bytes: &[u8]) -> Result<Ciphertext, KemError> {
        let p = &self.params;
        check_len("ciphertext", bytes, p.ciphertext_bytes())?;
        let pb = p.poly_bytes();
        let u = poly("ciphertext", p.n, &bytes[..pb])?;
        let v = poly("ciphertext", p.n, &bytes[pb..2 * pb])?;
        let mut d = [0u8; HASH_BYTES];
        d.copy_from_slice(&bytes[2 * pb..]);
        probe::record(|c| c.bytes_copied += HASH_BYTES as u64);
        Ok(Ciphertext { u, v, d })
    }
}
