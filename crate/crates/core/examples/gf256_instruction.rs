//! GF(2^8) multiplication as three carry-less multiply-and-add steps, the
//! operation a custom instruction would implement.

use hqc_core::gf256::{clmul_fma, gf_inverse, gf_mul, mul_table, GfElem, FIELD_MODULUS};

fn main() {
    let (a, b) = (0x57u8, 0x83u8);
    let fold = (FIELD_MODULUS & 0xFF) as u8;

    let wide = clmul_fma(u16::from(a) << 8, b);
    let once = clmul_fma(wide, fold);
    let twice = clmul_fma(once, fold);
    println!("{a:#04x} * {b:#04x}: product {wide:#06x}, folded {once:#06x}, folded {twice:#06x}");
    assert_eq!(GfElem(twice as u8), gf_mul(GfElem(a), GfElem(b)));

    let mismatches = (0..=255u8)
        .flat_map(|x| (0..=255u8).map(move |y| (x, y)))
        .filter(|&(x, y)| gf_mul(GfElem(x), GfElem(y)) != mul_table(GfElem(x), GfElem(y)))
        .count();
    println!("all 65536 products agree with the log/exp tables: {}", mismatches == 0);

    let inv = gf_inverse(GfElem(a)).unwrap();
    println!("{a:#04x}^-1 = {:#04x}, check {:#04x}", inv.0, gf_mul(GfElem(a), inv).0);
    assert!(gf_inverse(GfElem(0)).is_err());
}
