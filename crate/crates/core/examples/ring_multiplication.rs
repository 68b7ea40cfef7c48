//! Sparse-times-dense multiplication in F2[X]/(X^n - 1) by word shifts,
//! checked against a bit-level product and timed at the HQC-128 size.

use std::time::Instant;

use hqc_core::costmodel::instrumented;
use hqc_core::poly_ring::{mul_sparse_dense, DensePoly, SparsePoly};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn bit_product(s: &SparsePoly, d: &DensePoly) -> DensePoly {
    let n = d.n();
    let mut out = DensePoly::zero(n);
    for &c in s.support() {
        for j in (0..n).filter(|&j| d.bit(j)) {
            out.flip_bit((c as usize + j) % n);
        }
    }
    out
}

fn main() {
    let mut rng = StdRng::seed_from_u64(1);

    // X^(n-1) * X = 1 exercises the wrap-around
    let n = 97;
    let mut x = DensePoly::zero(n);
    x.flip_bit(1);
    let top = SparsePoly::new(n, vec![n as u32 - 1]).unwrap();
    let one = mul_sparse_dense(&top, &x);
    println!("X^96 * X mod X^97 - 1 has support {:?}", (0..n).filter(|&i| one.bit(i)).collect::<Vec<_>>());

    let n = 17669;
    let s = SparsePoly::random(n, 75, &mut rng);
    let d = DensePoly::random(n, &mut rng);
    let (fast, counts) = instrumented(|| mul_sparse_dense(&s, &d));
    assert_eq!(fast, bit_product(&s, &d));
    println!(
        "weight-75 product matches the bit-level product; {} accumulator word operations",
        counts.ring_word_ops
    );

    let iters = 1000;
    let start = Instant::now();
    for _ in 0..iters {
        std::hint::black_box(mul_sparse_dense(&s, &d));
    }
    println!("{:.1} us per multiplication", start.elapsed().as_secs_f64() * 1e6 / iters as f64);
}
