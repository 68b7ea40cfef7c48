//! Category costs of an instrumented run on the reference platform.
//!
//! Counters are weighted by per-unit software costs. Each weight is a single
//! scalar fitted by least squares over the three phases against the
//! matching reference-platform row, so one weight has to explain keygen,
//! encaps and decaps at once. The fitted values are frozen in
//! [`UnitCosts::REFERENCE`]; [`fit_unit_costs`] reproduces them.

use super::model::{DECAPS_BASELINE, ENCAPS_BASELINE, KEYGEN_BASELINE};
use super::{Category, CostProfile, Counters, Phase, PhaseBaseline};

/// Reference-platform cycles per counted event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCosts {
    pub ring_word_op: f64,
    pub keccak_permutation: f64,
    pub rs_encode: f64,
    pub rs_decode: f64,
    pub rm_block: f64,
    pub sample_draw: f64,
    pub byte_copied: f64,
    pub gf_mul: f64,
    /// Unsigned divisions, charged per sampling draw.
    pub division_per_draw: f64,
}

impl UnitCosts {
    /// Fit over the calibration profiles (`Seed([0; 40])`).
    pub const REFERENCE: UnitCosts = UnitCosts {
        ring_word_op: 81.8868,
        keccak_permutation: 60033.21,
        rs_encode: 26000.0,
        rs_decode: 56000.0,
        rm_block: 29521.74,
        sample_draw: 662.3439,
        byte_copied: 245.8411,
        gf_mul: 13.26267,
        division_per_draw: 422.8209,
    };
}

/// `argmin_c sum_p (c * x_p - y_p)^2`.
fn scalar_fit(pairs: impl Iterator<Item = (u64, u64)>) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in pairs {
        num += x as f64 * y as f64;
        den += x as f64 * x as f64;
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Fits one weight per counter from one profile of each phase.
pub fn fit_unit_costs(profiles: &[CostProfile; 3]) -> UnitCosts {
    const BASELINES: [PhaseBaseline; 3] = [KEYGEN_BASELINE, ENCAPS_BASELINE, DECAPS_BASELINE];
    for (p, want) in profiles.iter().zip(Phase::ALL) {
        assert_eq!(p.phase, want, "profiles must be keygen, encaps, decaps in order");
    }
    let fit = |count: fn(&Counters) -> u64, row: fn(&PhaseBaseline) -> u64| {
        scalar_fit(profiles.iter().zip(&BASELINES).map(|(p, b)| (count(&p.counters), row(b))))
    };
    UnitCosts {
        ring_word_op: fit(|c| c.ring_word_ops, |b| b.ring_arithmetic),
        keccak_permutation: fit(|c| c.keccak_permutations, |b| b.shake),
        rs_encode: fit(|c| c.rs_encodes, |b| b.rs_encode),
        rs_decode: fit(|c| c.rs_decodes, |b| b.rs_decode),
        rm_block: fit(|c| c.rm_blocks_decoded, |b| b.rm_decode),
        sample_draw: fit(|c| c.samples_drawn, |b| b.sampling),
        byte_copied: fit(|c| c.bytes_copied, |b| b.memory),
        gf_mul: fit(|c| c.gf_muls, |b| b.gf_mul),
        division_per_draw: fit(|c| c.samples_drawn, |b| b.unsigned_division),
    }
}

/// Weighted cost of every category for one profile.
pub fn category_costs(prof: &CostProfile, u: &UnitCosts) -> [(Category, f64); 6] {
    let c = &prof.counters;
    let f = |x: u64| x as f64;
    [
        (Category::RingArithmetic, f(c.ring_word_ops) * u.ring_word_op),
        (Category::Shake, f(c.keccak_permutations) * u.keccak_permutation),
        (
            Category::Codes,
            f(c.rs_encodes) * u.rs_encode + f(c.rs_decodes) * u.rs_decode + f(c.rm_blocks_decoded) * u.rm_block,
        ),
        (Category::Sampling, f(c.samples_drawn) * u.sample_draw),
        (Category::Memory, f(c.bytes_copied) * u.byte_copied),
        (Category::Rest, f(c.gf_muls) * u.gf_mul + f(c.samples_drawn) * u.division_per_draw),
    ]
}

/// Categories from most to least expensive.
pub fn rank_categories(prof: &CostProfile, u: &UnitCosts) -> Vec<Category> {
    let mut costs = category_costs(prof, u);
    costs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    costs.iter().map(|(c, _)| *c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costmodel::profile;
    use crate::sampling::{Seed, SEED_BYTES};

    fn calibration_profiles() -> [CostProfile; 3] {
        let seed = Seed([0; SEED_BYTES]);
        Phase::ALL.map(|p| profile(p, &seed))
    }

    #[test]
    fn scalar_fit_examples() {
        assert_eq!(scalar_fit([(1, 2), (2, 4), (3, 6)].into_iter()), 2.0);
        assert_eq!(scalar_fit([(0, 5)].into_iter()), 0.0);
    }

    #[test]
    fn frozen_costs_match_refit() {
        let fitted = fit_unit_costs(&calibration_profiles());
        let pairs = [
            (fitted.ring_word_op, UnitCosts::REFERENCE.ring_word_op),
            (fitted.keccak_permutation, UnitCosts::REFERENCE.keccak_permutation),
            (fitted.rs_encode, UnitCosts::REFERENCE.rs_encode),
            (fitted.rs_decode, UnitCosts::REFERENCE.rs_decode),
            (fitted.rm_block, UnitCosts::REFERENCE.rm_block),
            (fitted.sample_draw, UnitCosts::REFERENCE.sample_draw),
            (fitted.byte_copied, UnitCosts::REFERENCE.byte_copied),
            (fitted.gf_mul, UnitCosts::REFERENCE.gf_mul),
            (fitted.division_per_draw, UnitCosts::REFERENCE.division_per_draw),
        ];
        for (i, (got, frozen)) in pairs.into_iter().enumerate() {
            assert!((got - frozen).abs() <= 1e-3 * got.abs().max(1.0), "weight {i}: fitted {got}, frozen {frozen}");
        }
    }

    #[test]
    fn keygen_has_no_code_cost() {
        let p = profile(Phase::Keygen, &Seed([9; SEED_BYTES]));
        let costs = category_costs(&p, &UnitCosts::REFERENCE);
        assert_eq!(costs[2], (Category::Codes, 0.0));
    }
}
