//! Cycle estimates for every accelerator combination, in the layout of an
//! ablation table: each row adds one unit on top of the DMA.

use hqc_core::costmodel::{
    costmodel_report, estimate_cycles, profile, speedup_report, AcceleratorConfig, CycleConstants, Phase,
};
use hqc_core::sampling::Seed;

fn main() {
    let consts = CycleConstants::default();
    let profiles: Vec<_> = Phase::ALL.iter().map(|&p| profile(p, &Seed([0; 40]))).collect();

    let rows = [
        ("Reference", AcceleratorConfig::NONE),
        ("DMA", AcceleratorConfig::DMA_ONLY),
        ("+ R-Unit", AcceleratorConfig { r_unit: true, ..AcceleratorConfig::DMA_ONLY }),
        ("+ Sampling-Unit", AcceleratorConfig { sampling_unit: true, ..AcceleratorConfig::DMA_ONLY }),
        ("+ RM-Decoder", AcceleratorConfig { rm_decoder: true, ..AcceleratorConfig::DMA_ONLY }),
        ("+ GF(2^8) instruction", AcceleratorConfig { gf_insn: true, ..AcceleratorConfig::DMA_ONLY }),
        ("+ All Modules", AcceleratorConfig::ALL),
    ];
    println!("{:<24}{:>18}{:>18}{:>18}", "", "keygen", "encaps", "decaps");
    for (name, cfg) in rows {
        print!("{name:<24}");
        for prof in &profiles {
            let base = estimate_cycles(&AcceleratorConfig::NONE, prof, &consts);
            let e = estimate_cycles(&cfg, prof, &consts);
            print!("{:>18}", format!("{}k {}", (e.total() + 500) / 1000, speedup_report(&base, &e)));
        }
        println!();
    }

    println!("\n{}", costmodel_report(&AcceleratorConfig::ALL, &profiles, &consts));
}
