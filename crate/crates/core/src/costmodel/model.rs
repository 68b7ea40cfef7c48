use std::fmt;

use super::{Category, CostProfile, Counters, Phase};

/// Reference-platform cycles of one phase, broken down the way the profiler
/// reports them. All values are in cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseBaseline {
    pub total: u64,
    pub ring_arithmetic: u64,
    pub shake: u64,
    pub rs_encode: u64,
    pub rs_decode: u64,
    pub rm_decode: u64,
    pub sampling: u64,
    pub memory: u64,
    pub unsigned_division: u64,
    pub gf_mul: u64,
    /// Remainder of the Rest row after division and gf_mul.
    pub rest_other: u64,
}

impl PhaseBaseline {
    pub fn codes(&self) -> u64 {
        self.rs_encode + self.rs_decode + self.rm_decode
    }

    pub fn rest(&self) -> u64 {
        self.unsigned_division + self.gf_mul + self.rest_other
    }

    pub fn category(&self, c: Category) -> u64 {
        match c {
            Category::RingArithmetic => self.ring_arithmetic,
            Category::Shake => self.shake,
            Category::Codes => self.codes(),
            Category::Sampling => self.sampling,
            Category::Memory => self.memory,
            Category::Rest => self.rest(),
        }
    }

    fn category_sum(&self) -> u64 {
        Category::ALL.iter().map(|&c| self.category(c)).sum()
    }
}

const K: u64 = 1000;

/// Reference implementation on the RISC-V platform, total cycle count and
/// share of important functions.
pub const KEYGEN_BASELINE: PhaseBaseline = PhaseBaseline {
    total: 5609 * K,
    ring_arithmetic: 1540 * K,
    shake: 1854 * K,
    rs_encode: 0,
    rs_decode: 0,
    rm_decode: 0,
    sampling: 81 * K,
    memory: 2071 * K,
    unsigned_division: 49 * K,
    gf_mul: 0,
    rest_other: 14 * K,
};

pub const ENCAPS_BASELINE: PhaseBaseline = PhaseBaseline {
    total: 13850 * K,
    ring_arithmetic: 3448 * K,
    shake: 5007 * K,
    rs_encode: 26 * K,
    rs_decode: 0,
    rm_decode: 0,
    sampling: 155 * K,
    memory: 5068 * K,
    unsigned_division: 100 * K,
    gf_mul: 20 * K,
    rest_other: 26 * K,
};

pub const DECAPS_BASELINE: PhaseBaseline = PhaseBaseline {
    total: 19903 * K,
    ring_arithmetic: 4989 * K,
    shake: 5414 * K,
    rs_encode: 26 * K,
    rs_decode: 56 * K,
    rm_decode: 1358 * K,
    sampling: 236 * K,
    memory: 7175 * K,
    unsigned_division: 151 * K,
    gf_mul: 162 * K,
    rest_other: 336 * K,
};

/// Measured "DMA + SW_OPT" cycles per phase, the target of the DMA fit.
pub const DMA_SW_OPT_CYCLES: [u64; 3] = [3587 * K, 7044 * K, 10851 * K];

/// Model constants. Software baselines are reference-platform measurements;
/// accelerator constants are per-operation hardware latencies.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleConstants {
    /// Keccak core latency per permutation.
    pub keccak_permute_cycles: u64,
    /// State transfer to and from the sampling unit per permutation. No
    /// measured figure exists; this is an assumption.
    pub keccak_io_cycles: u64,
    /// R-Unit latency per result word (address/read cycle plus compute/write cycle).
    pub r_unit_cycles_per_word: u64,
    /// R-Unit per-coordinate setup (coordinate fetch and shift decode).
    pub r_unit_setup_cycles: u64,
    /// Custom GF(2^8) multiply instruction latency.
    pub gf_insn_cycles: u64,
    /// RM decoder latency per 384-bit block: one cycle per folded bit plus
    /// 320 cycles of transform and peak search.
    pub rm_decoder_cycles_per_block: u64,
    /// Sampling-unit rejection and reduction per 24-bit draw.
    pub sampling_cycles_per_draw: u64,
    /// Scale applied to the memory category when the DMA is enabled.
    pub dma_factor: f64,
    /// Words per ring element, the R-Unit loop length.
    pub words_n: u64,
    pub baselines: [PhaseBaseline; 3],
}

impl Default for CycleConstants {
    fn default() -> Self {
        CycleConstants {
            keccak_permute_cycles: 24,
            keccak_io_cycles: 50,
            r_unit_cycles_per_word: 2,
            r_unit_setup_cycles: 2,
            gf_insn_cycles: 4,
            rm_decoder_cycles_per_block: 704,
            sampling_cycles_per_draw: 2,
            dma_factor: dma_factor_fit(&[KEYGEN_BASELINE, ENCAPS_BASELINE, DECAPS_BASELINE])
                .clamp(0.0, 1.0),
            words_n: 277,
            baselines: [KEYGEN_BASELINE, ENCAPS_BASELINE, DECAPS_BASELINE],
        }
    }
}

impl CycleConstants {
    pub fn baseline(&self, phase: Phase) -> &PhaseBaseline {
        &self.baselines[phase.index()]
    }

    /// R-Unit cycles for a profile: every multiplication walks `words_n + 1`
    /// words per sparse coordinate and is then reduced, every addition walks
    /// `words_n` words.
    pub fn r_unit_cycles(&self, c: &Counters) -> u64 {
        let per_word = self.r_unit_cycles_per_word;
        c.ring_coordinates * (per_word * (self.words_n + 1) + self.r_unit_setup_cycles)
            + (c.ring_muls + c.ring_adds) * per_word * self.words_n
    }

    /// Cycles for a single multiplication with a sparse operand of `weight`.
    pub fn r_unit_mul_cycles(&self, weight: u64) -> u64 {
        let c = Counters { ring_muls: 1, ring_coordinates: weight, ..Counters::default() };
        self.r_unit_cycles(&c)
    }
}

/// Least-squares scalar `f` such that removing `(1 - f)` of the memory
/// category best reproduces the "DMA + SW_OPT" totals. The raw value can
/// fall outside `[0, 1]` because that row also contains software rewrites.
pub fn dma_factor_fit(baselines: &[PhaseBaseline; 3]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (b, &row) in baselines.iter().zip(&DMA_SW_OPT_CYCLES) {
        let mem = b.memory as f64;
        num += mem * (row as f64 - b.total as f64 + mem);
        den += mem * mem;
    }
    num / den
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AcceleratorConfig {
    pub dma: bool,
    pub r_unit: bool,
    pub sampling_unit: bool,
    pub rm_decoder: bool,
    pub gf_insn: bool,
}

impl AcceleratorConfig {
    pub const NONE: AcceleratorConfig = AcceleratorConfig {
        dma: false,
        r_unit: false,
        sampling_unit: false,
        rm_decoder: false,
        gf_insn: false,
    };

    pub const ALL: AcceleratorConfig = AcceleratorConfig {
        dma: true,
        r_unit: true,
        sampling_unit: true,
        rm_decoder: true,
        gf_insn: true,
    };

    pub const DMA_ONLY: AcceleratorConfig = AcceleratorConfig { dma: true, ..Self::NONE };

    /// Bit `i` of `mask` sets the `i`-th flag in declaration order.
    pub fn from_mask(mask: u8) -> Self {
        AcceleratorConfig {
            dma: mask & 1 != 0,
            r_unit: mask & 2 != 0,
            sampling_unit: mask & 4 != 0,
            rm_decoder: mask & 8 != 0,
            gf_insn: mask & 16 != 0,
        }
    }

    pub fn all_combinations() -> impl Iterator<Item = AcceleratorConfig> {
        (0..32u8).map(Self::from_mask)
    }

    pub fn flags(&self) -> [(&'static str, bool); 5] {
        [
            ("dma", self.dma),
            ("r_unit", self.r_unit),
            ("sampling_unit", self.sampling_unit),
            ("rm_decoder", self.rm_decoder),
            ("gf_insn", self.gf_insn),
        ]
    }
}

impl fmt::Display for AcceleratorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let on: Vec<&str> = self.flags().iter().filter(|(_, v)| *v).map(|(k, _)| *k).collect();
        if on.is_empty() {
            f.write_str("reference")
        } else {
            f.write_str(&on.join("+"))
        }
    }
}

/// Cycle estimate of one phase under one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub phase: Phase,
    pub config: AcceleratorConfig,
    pub categories: [(Category, u64); 6],
    /// One line per category: the formula used and its value.
    pub formulas: Vec<String>,
}

impl Estimate {
    pub fn total(&self) -> u64 {
        self.categories.iter().map(|(_, v)| v).sum()
    }

    pub fn category(&self, c: Category) -> u64 {
        self.categories.iter().find(|(k, _)| *k == c).map(|(_, v)| *v).unwrap_or(0)
    }
}

/// Keeps the accelerated cost only when it beats the software share.
fn accelerated(software: u64, hw: u64) -> u64 {
    hw.min(software)
}

pub fn estimate_cycles(cfg: &AcceleratorConfig, prof: &CostProfile, consts: &CycleConstants) -> Estimate {
    let b = consts.baseline(prof.phase);
    debug_assert_eq!(b.category_sum(), b.total);
    let c = &prof.counters;
    let mut formulas = Vec::new();

    let ring = if cfg.r_unit {
        let hw = consts.r_unit_cycles(c);
        formulas.push(format!(
            "ring = coords*({pw}*(words_n+1)+{setup}) + (muls+adds)*{pw}*words_n \
             = {co}*({pw}*{wn1}+{setup}) + ({m}+{a})*{pw}*{wn} = {hw}",
            pw = consts.r_unit_cycles_per_word,
            setup = consts.r_unit_setup_cycles,
            co = c.ring_coordinates,
            wn1 = consts.words_n + 1,
            wn = consts.words_n,
            m = c.ring_muls,
            a = c.ring_adds,
        ));
        accelerated(b.ring_arithmetic, hw)
    } else {
        formulas.push(format!("ring = software {}", b.ring_arithmetic));
        b.ring_arithmetic
    };

    let (shake, sampling) = if cfg.sampling_unit {
        let per_perm = consts.keccak_permute_cycles + consts.keccak_io_cycles;
        let hw_shake = c.keccak_permutations * per_perm;
        let hw_samp = c.samples_drawn * consts.sampling_cycles_per_draw;
        formulas.push(format!(
            "shake = permutations*({}+{}) = {}*{} = {}",
            consts.keccak_permute_cycles, consts.keccak_io_cycles, c.keccak_permutations, per_perm, hw_shake
        ));
        formulas.push(format!(
            "sampling = draws*{} = {}*{} = {}",
            consts.sampling_cycles_per_draw, c.samples_drawn, consts.sampling_cycles_per_draw, hw_samp
        ));
        (accelerated(b.shake, hw_shake), accelerated(b.sampling, hw_samp))
    } else {
        formulas.push(format!("shake = software {}", b.shake));
        formulas.push(format!("sampling = software {}", b.sampling));
        (b.shake, b.sampling)
    };

    let rm = if cfg.rm_decoder {
        let hw = c.rm_blocks_decoded * consts.rm_decoder_cycles_per_block;
        formulas.push(format!(
            "codes = rs_encode + rs_decode + blocks*{} = {} + {} + {}*{} = {}",
            consts.rm_decoder_cycles_per_block,
            b.rs_encode,
            b.rs_decode,
            c.rm_blocks_decoded,
            consts.rm_decoder_cycles_per_block,
            b.rs_encode + b.rs_decode + hw.min(b.rm_decode)
        ));
        accelerated(b.rm_decode, hw)
    } else {
        formulas.push(format!("codes = software {}", b.codes()));
        b.rm_decode
    };
    let codes = b.rs_encode + b.rs_decode + rm;

    let memory = if cfg.dma {
        let hw = (b.memory as f64 * consts.dma_factor).round() as u64;
        formulas.push(format!("memory = software*dma_factor = {}*{:.3} = {}", b.memory, consts.dma_factor, hw));
        accelerated(b.memory, hw)
    } else {
        formulas.push(format!("memory = software {}", b.memory));
        b.memory
    };

    // The R-Unit takes over the coordinate/word index arithmetic, which is
    // where the reference spends its unsigned divisions.
    let division = if cfg.r_unit { 0 } else { b.unsigned_division };
    let gf = if cfg.gf_insn { accelerated(b.gf_mul, c.gf_muls * consts.gf_insn_cycles) } else { b.gf_mul };
    formulas.push(format!(
        "rest = division {} + gf_mul {} + other {}{}",
        division,
        gf,
        b.rest_other,
        if cfg.gf_insn { format!(" (gf_mul = {}*{})", c.gf_muls, consts.gf_insn_cycles) } else { String::new() }
    ));
    let rest = division + gf + b.rest_other;

    Estimate {
        phase: prof.phase,
        config: *cfg,
        categories: [
            (Category::RingArithmetic, ring),
            (Category::Shake, shake),
            (Category::Codes, codes),
            (Category::Sampling, sampling),
            (Category::Memory, memory),
            (Category::Rest, rest),
        ],
        formulas,
    }
}

/// Percentage reduction of `accel` relative to `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Speedup {
    pub phase: Phase,
    pub base: u64,
    pub accel: u64,
    pub percent: f64,
}

impl fmt::Display for Speedup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.1}%", self.percent)
    }
}

pub fn speedup_report(base: &Estimate, accel: &Estimate) -> Speedup {
    assert_eq!(base.phase, accel.phase, "speedup across different phases");
    let (b, a) = (base.total(), accel.total());
    Speedup { phase: base.phase, base: b, accel: a, percent: 100.0 * (1.0 - a as f64 / b as f64) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn synthetic(phase: Phase) -> CostProfile {
        // counts of the shape a real run produces
        let counters = match phase {
            Phase::Keygen => Counters {
                keccak_permutations: 24,
                ring_muls: 1,
                ring_coordinates: 66,
                ring_adds: 1,
                samples_drawn: 133,
                ..Counters::default()
            },
            Phase::Encaps => Counters {
                keccak_permutations: 60,
                ring_muls: 2,
                ring_coordinates: 150,
                ring_adds: 3,
                samples_drawn: 230,
                gf_muls: 480,
                rs_encodes: 1,
                ..Counters::default()
            },
            Phase::Decaps => Counters {
                keccak_permutations: 80,
                ring_muls: 3,
                ring_coordinates: 216,
                ring_adds: 4,
                samples_drawn: 230,
                gf_muls: 20000,
                rm_blocks_decoded: 46,
                rs_encodes: 1,
                rs_decodes: 1,
                ..Counters::default()
            },
        };
        CostProfile { phase, counters, wall_time: Duration::ZERO }
    }

    #[test]
    fn baseline_rows_are_consistent() {
        for b in CycleConstants::default().baselines {
            assert_eq!(b.category_sum(), b.total);
        }
    }

    #[test]
    fn reference_config_reproduces_baselines() {
        let consts = CycleConstants::default();
        let want = [5_609_000, 13_850_000, 19_903_000];
        for (p, w) in Phase::ALL.into_iter().zip(want) {
            assert_eq!(estimate_cycles(&AcceleratorConfig::NONE, &synthetic(p), &consts).total(), w);
        }
    }

    #[test]
    fn r_unit_single_multiplication() {
        let consts = CycleConstants::default();
        // 2 * 75 * 277 plus the carry word, setup and reduction terms
        assert_eq!(2 * 75 * 277, 41_550);
        assert_eq!(consts.r_unit_mul_cycles(75), 41_550 + 75 * (2 + 2) + 2 * 277);
    }

    #[test]
    fn dma_fit_value() {
        let raw = dma_factor_fit(&CycleConstants::default().baselines);
        assert!((raw - (-0.2722)).abs() < 1e-3, "{raw}");
        assert_eq!(CycleConstants::default().dma_factor, 0.0);
    }

    #[test]
    fn monotone_over_all_configs() {
        let consts = CycleConstants::default();
        for p in Phase::ALL {
            let prof = synthetic(p);
            for cfg in AcceleratorConfig::all_combinations() {
                let e = estimate_cycles(&cfg, &prof, &consts);
                for (i, (name, on)) in cfg.flags().into_iter().enumerate() {
                    if on {
                        continue;
                    }
                    let mask = (0..5).fold(0u8, |m, j| m | (u8::from(cfg.flags()[j].1) << j)) | (1 << i);
                    let more = estimate_cycles(&AcceleratorConfig::from_mask(mask), &prof, &consts);
                    assert!(more.total() <= e.total(), "{p} {cfg} + {name}");
                }
            }
        }
    }

    #[test]
    fn all_modules_improvement() {
        let consts = CycleConstants::default();
        for p in Phase::ALL {
            let prof = synthetic(p);
            let base = estimate_cycles(&AcceleratorConfig::NONE, &prof, &consts);
            let all = estimate_cycles(&AcceleratorConfig::ALL, &prof, &consts);
            assert!(all.total() < base.total());
            assert!(speedup_report(&base, &all).percent >= 90.0);
        }
    }

    #[test]
    fn speedup_examples() {
        let consts = CycleConstants::default();
        let prof = synthetic(Phase::Keygen);
        let base = estimate_cycles(&AcceleratorConfig::NONE, &prof, &consts);
        assert_eq!(speedup_report(&base, &base).to_string(), "0.0%");
        let mut accel = base.clone();
        accel.categories = [
            (Category::RingArithmetic, 56_000),
            (Category::Shake, 0),
            (Category::Codes, 0),
            (Category::Sampling, 0),
            (Category::Memory, 0),
            (Category::Rest, 0),
        ];
        assert_eq!(speedup_report(&base, &accel).to_string(), "99.0%");
        assert!(speedup_report(&accel, &base).percent < 0.0);
    }

    #[test]
    #[should_panic(expected = "different phases")]
    fn speedup_phase_mismatch() {
        let consts = CycleConstants::default();
        let a = estimate_cycles(&AcceleratorConfig::NONE, &synthetic(Phase::Keygen), &consts);
        let b = estimate_cycles(&AcceleratorConfig::NONE, &synthetic(Phase::Encaps), &consts);
        speedup_report(&a, &b);
    }

    #[test]
    fn config_masks() {
        assert_eq!(AcceleratorConfig::from_mask(0), AcceleratorConfig::NONE);
        assert_eq!(AcceleratorConfig::from_mask(31), AcceleratorConfig::ALL);
        assert_eq!(AcceleratorConfig::all_combinations().count(), 32);
        assert_eq!(AcceleratorConfig::DMA_ONLY.to_string(), "dma");
        assert_eq!(AcceleratorConfig::NONE.to_string(), "reference");
    }
}
