//! Key generation, encapsulation and decapsulation, followed by a tampered
//! ciphertext that the re-encryption check rejects.

use hqc_core::kem::{Hqc, KemError};
use hqc_core::sampling::Seed;

fn main() -> Result<(), KemError> {
    let kem = Hqc::hqc128();
    let p = kem.params();
    println!(
        "HQC-128: n = {}, n1 = {}, n2 = {}, w = {}, w_r = w_e = {}",
        p.n, p.n1, p.n2, p.w, p.w_r
    );

    let (pk, sk) = kem.keygen(&Seed([0x11; 40]))?;
    let (ct, ss) = kem.encaps(&pk, &Seed([0x22; 40]))?;
    let recovered = kem.decaps(&sk, &ct)?;
    assert_eq!(recovered, ss);

    println!("public key  {} bytes", pk.to_bytes().len());
    println!("secret key  {} bytes", sk.to_bytes().len());
    println!("ciphertext  {} bytes", ct.to_bytes().len());
    println!("shared key  {}", hex::encode(ss.as_bytes()));

    // any single flipped bit changes the re-encryption
    let mut bad = ct.clone();
    bad.v.flip_bit(1234);
    match kem.decaps(&sk, &bad) {
        Err(KemError::Rejected) => println!("tampered ciphertext rejected"),
        other => panic!("unexpected result {other:?}"),
    }
    Ok(())
}
