//! Known-answer records: generate, serialize, parse back and re-verify.

use hqc_core::cli::kat;
use hqc_core::kem::Hqc;
use hqc_core::sampling::Seed;

fn main() {
    let kem = Hqc::hqc128();
    let records = kat::generate(&kem, &Seed([0; 40]), 3);
    let text = kat::format(&records);
    for line in text.lines().take(6) {
        let shown = if line.len() > 72 { format!("{}...", &line[..72]) } else { line.to_string() };
        println!("{shown}");
    }

    let parsed = kat::parse(&text).expect("well-formed");
    for r in &parsed {
        println!("count {}: {}", r.count, if kat::verify(&kem, r) { "PASS" } else { "FAIL" });
    }
}
