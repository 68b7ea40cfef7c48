//! The public code: Reed-Solomon over GF(2^8) concatenated with duplicated
//! RM(1,7). A codeword survives heavy bit noise in every block plus a few
//! blocks that are destroyed outright.

use hqc_core::codes::{rm_decode, rm_encode, ConcatenatedCode};
use hqc_core::gf256::GfElem;
use hqc_core::params::hqc128;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = StdRng::seed_from_u64(2);

    let sym = GfElem(0xB7);
    let mut block = rm_encode(sym, 3);
    for p in rand::seq::index::sample(&mut rng, 384, 95) {
        block.flip_bit(p);
    }
    println!("RM block with 95 of 384 bits flipped decodes to {:#04x}", rm_decode(&block).0);

    let code = ConcatenatedCode::new(hqc128());
    let m: Vec<u8> = (0..16).map(|_| rng.random()).collect();
    let mut c = code.encode(&m);
    println!("message {} -> codeword weight {}", hex::encode(&m), c.weight());

    let destroyed = rand::seq::index::sample(&mut rng, 46, 15).into_vec();
    let mut flipped = 0;
    for b in 0..46 {
        let flips = if destroyed.contains(&b) { 192 } else { 80 };
        for off in rand::seq::index::sample(&mut rng, 384, flips) {
            c.flip_bit(b * 384 + off);
        }
        flipped += flips;
    }
    let decoded = code.decode(&c);
    println!("{flipped} bit flips, {} blocks destroyed -> {}", destroyed.len(), hex::encode(&decoded));
    assert_eq!(decoded, m);
}
