//! Instrumented run of all three phases: raw counters, the fitted per-unit
//! weights and the resulting category ranking.

use hqc_core::costmodel::{fit_unit_costs, profile, profile_report, rank_categories, Phase, UnitCosts};
use hqc_core::sampling::{Seed, SEED_BYTES};

fn main() {
    let seed = Seed([0; SEED_BYTES]);
    let profiles = Phase::ALL.map(|p| profile(p, &seed));

    for p in &profiles {
        println!("{}: {:?}", p.phase, p.counters);
    }
    println!();

    let fitted = fit_unit_costs(&profiles);
    println!("fitted unit costs: {fitted:#?}\n");

    print!("{}", profile_report(&profiles, &UnitCosts::REFERENCE));
    for p in &profiles {
        let top: Vec<_> = rank_categories(p, &UnitCosts::REFERENCE).iter().take(3).map(|c| c.label()).collect();
        println!("{} top three: {}", p.phase, top.join(", "));
    }
}
