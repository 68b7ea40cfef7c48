//! Portable HQC-128 key encapsulation.
//!
//! The crate is split along the cost profile of the scheme:
//!
//! - [`poly_ring`]: arithmetic in `F2[X]/(X^n - 1)`, sparse-times-dense
//!   multiplication by word shifts.
//! - [`gf256`]: GF(2^8) with a carry-less multiply-and-fold core.
//! - [`codes`]: Reed-Solomon outer code and duplicated Reed-Muller inner code.
//! - [`sampling`]: Keccak, SHAKE256 seed expansion, SHA3-512 hashing and
//!   fixed-weight sampling.
//! - [`kem`]: the PKE and the KEM with re-encryption check.
//! - [`costmodel`]: primitive counters and a cycle model of the hardware
//!   accelerators.
//! - [`cli`]: the `hqc` command-line tool.
//!
//! Secret-dependent work runs in fixed iteration counts with masked
//! selections. The one known residual is the word offset chosen per sparse
//! coordinate in [`poly_ring::mul_sparse_dense`], which is a
//! secret-dependent memory address.

pub mod cli;
pub mod codes;
pub mod costmodel;
pub mod gf256;
pub mod kem;
pub mod params;
pub mod poly_ring;
pub mod sampling;
