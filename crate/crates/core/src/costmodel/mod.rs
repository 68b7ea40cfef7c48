//! Profiling counters and an analytical cycle model for accelerated HQC.
//!
//! [`profile`] runs one KEM phase with counting enabled. [`estimate_cycles`]
//! maps a profile and an [`AcceleratorConfig`] to a cycle estimate: each
//! category keeps its measured reference-platform cost unless its
//! accelerator is enabled, in which case a count-times-constant formula
//! replaces it.

pub mod probe;

mod model;
mod ranking;
mod report;

pub use model::{
    dma_factor_fit, estimate_cycles, speedup_report, AcceleratorConfig, CycleConstants, Estimate,
    PhaseBaseline, Speedup,
};
pub use probe::{instrumented, Counters};
pub use ranking::{category_costs, fit_unit_costs, rank_categories, UnitCosts};
pub use report::{costmodel_report, profile_report};

use std::fmt;
use std::time::{Duration, Instant};

use crate::kem::Hqc;
use crate::sampling::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Keygen,
    Encaps,
    Decaps,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::Keygen, Phase::Encaps, Phase::Decaps];

    pub fn name(self) -> &'static str {
        match self {
            Phase::Keygen => "keygen",
            Phase::Encaps => "encaps",
            Phase::Decaps => "decaps",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Phase::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown phase `{s}` (expected keygen, encaps or decaps)"))
    }
}

/// Cost categories of the reference-platform profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    RingArithmetic,
    Shake,
    Codes,
    Sampling,
    Memory,
    Rest,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::RingArithmetic,
        Category::Shake,
        Category::Codes,
        Category::Sampling,
        Category::Memory,
        Category::Rest,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Category::RingArithmetic => "Arithmetic in R",
            Category::Shake => "SHAKE",
            Category::Codes => "RS-RM Code",
            Category::Sampling => "Sampling",
            Category::Memory => "Memory-Operation",
            Category::Rest => "Rest",
        }
    }

    /// Short key used in key=value report lines.
    pub fn key(self) -> &'static str {
        match self {
            Category::RingArithmetic => "ring",
            Category::Shake => "shake",
            Category::Codes => "codes",
            Category::Sampling => "sampling",
            Category::Memory => "memory",
            Category::Rest => "rest",
        }
    }
}

/// Counters and wall time of one instrumented phase.
#[derive(Debug, Clone, PartialEq)]
pub struct CostProfile {
    pub phase: Phase,
    pub counters: Counters,
    pub wall_time: Duration,
}

/// Runs `phase` on HQC-128 with counting enabled. Inputs for encaps and
/// decaps are prepared from `seed` outside the measured region.
pub fn profile(phase: Phase, seed: &Seed) -> CostProfile {
    profile_with(&Hqc::hqc128(), phase, seed)
}

pub fn profile_with(kem: &Hqc, phase: Phase, seed: &Seed) -> CostProfile {
    let measure = |f: &dyn Fn()| {
        let start = Instant::now();
        let ((), counters) = instrumented(f);
        CostProfile { phase, counters, wall_time: start.elapsed() }
    };
    match phase {
        Phase::Keygen => measure(&|| {
            kem.keypair_bytes(seed).expect("keygen");
        }),
        Phase::Encaps => {
            let (pk, _) = kem.keypair_bytes(seed).expect("keygen");
            measure(&|| {
                kem.encaps_bytes(&pk, seed).expect("encaps");
            })
        }
        Phase::Decaps => {
            let (pk, sk) = kem.keypair_bytes(seed).expect("keygen");
            let (ct, _) = kem.encaps_bytes(&pk, seed).expect("encaps");
            measure(&|| {
                kem.decaps_bytes(&sk, &ct).expect("honest ciphertext decapsulates");
            })
        }
    }
}
