//! SHAKE256 seed expansion and fixed-weight rejection sampling.

use hqc_core::sampling::{
    domain, rejection_threshold, sample_fixed_weight_traced, xof_init, Seed, Xof,
};

fn main() {
    let mut xof = Xof::new();
    xof.absorb(b"");
    println!("SHAKE256(\"\")[..16] = {}", hex::encode(xof.squeeze(16)));

    let n = 17669;
    println!("rejection threshold for n = {n}: {}", rejection_threshold(n));

    let mut xof = xof_init(&Seed([0x42; 40]), domain::SEED_EXPAND);
    let (mut draws, mut rejected) = (0, 0);
    let s = sample_fixed_weight_traced(&mut xof, 75, n, |d| {
        draws += 1;
        rejected += usize::from(!d.accepted);
    })
    .unwrap();
    println!("weight {} from {draws} draws ({rejected} rejected)", s.weight());
    println!("first coordinates: {:?}", &s.support()[..8]);
}
