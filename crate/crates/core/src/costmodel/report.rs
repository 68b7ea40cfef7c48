//! Plain-text reports. Each ends with `key=value` lines meant for scripts.

use std::fmt::Write;

use super::model::dma_factor_fit;
use super::{
    category_costs, estimate_cycles, rank_categories, speedup_report, AcceleratorConfig, Category,
    CostProfile, CycleConstants, UnitCosts,
};

fn kcycles(c: u64) -> String {
    format!("{}k", (c as f64 / 1000.0).round() as u64)
}

/// Category table for the given profiles, weighted with `units`.
pub fn profile_report(profiles: &[CostProfile], units: &UnitCosts) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<18}", "Category");
    for p in profiles {
        let _ = write!(out, "{:>22}", p.phase.name());
    }
    out.push('\n');

    let costs: Vec<[(Category, f64); 6]> = profiles.iter().map(|p| category_costs(p, units)).collect();
    let totals: Vec<f64> = costs.iter().map(|c| c.iter().map(|(_, v)| v).sum()).collect();
    let _ = write!(out, "{:<18}", "Total");
    for t in &totals {
        let _ = write!(out, "{:>22}", kcycles(*t as u64));
    }
    out.push('\n');
    for (i, cat) in Category::ALL.iter().enumerate() {
        let _ = write!(out, "{:<18}", cat.label());
        for (c, t) in costs.iter().zip(&totals) {
            let v = c[i].1;
            let share = if *t > 0.0 { 100.0 * v / t } else { 0.0 };
            let _ = write!(out, "{:>22}", format!("{} ({share:.2}%)", kcycles(v as u64)));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:<18}", "wall time");
    for p in profiles {
        let _ = write!(out, "{:>22}", format!("{:.3} ms", p.wall_time.as_secs_f64() * 1e3));
    }
    out.push_str("\n\n");

    for (p, c) in profiles.iter().zip(&costs) {
        let name = p.phase.name();
        for (cat, v) in c {
            let _ = writeln!(out, "profile.{name}.{}={}", cat.key(), v.round() as u64);
        }
        let k = &p.counters;
        for (key, v) in [
            ("keccak_permutations", k.keccak_permutations),
            ("gf_muls", k.gf_muls),
            ("ring_word_ops", k.ring_word_ops),
            ("bytes_copied", k.bytes_copied),
            ("samples_drawn", k.samples_drawn),
            ("rm_blocks_decoded", k.rm_blocks_decoded),
        ] {
            let _ = writeln!(out, "profile.{name}.count.{key}={v}");
        }
        let rank: Vec<&str> = rank_categories(p, units).iter().map(|c| c.key()).collect();
        let _ = writeln!(out, "profile.{name}.rank={}", rank.join(","));
        let _ = writeln!(out, "profile.{name}.wall_ns={}", p.wall_time.as_nanos());
    }
    out
}

/// Cycle estimates for `cfg` next to the reference and DMA-only rows, the
/// formula sheet, and key=value lines.
pub fn costmodel_report(cfg: &AcceleratorConfig, profiles: &[CostProfile], consts: &CycleConstants) -> String {
    let mut out = String::new();
    let reference: Vec<_> = profiles.iter().map(|p| estimate_cycles(&AcceleratorConfig::NONE, p, consts)).collect();
    let dma: Vec<_> = profiles.iter().map(|p| estimate_cycles(&AcceleratorConfig::DMA_ONLY, p, consts)).collect();
    let chosen: Vec<_> = profiles.iter().map(|p| estimate_cycles(cfg, p, consts)).collect();

    let label = if *cfg == AcceleratorConfig::ALL { "all modules".to_string() } else { cfg.to_string() };
    let w = label.len().max(22) + 2;
    let _ = write!(out, "{:<w$}", "");
    for p in profiles {
        let _ = write!(out, "{:>10}{:>14}", p.phase.name(), "improvement");
    }
    out.push('\n');
    let _ = write!(out, "{:<w$}", "Reference");
    for e in &reference {
        let _ = write!(out, "{:>10}{:>14}", kcycles(e.total()), "-");
    }
    out.push('\n');
    let accelerated = *cfg != AcceleratorConfig::NONE;
    if accelerated {
        let _ = write!(out, "{:<w$}", "DMA");
        for (r, d) in reference.iter().zip(&dma) {
            let _ = write!(out, "{:>10}{:>14}", kcycles(d.total()), speedup_report(r, d).to_string());
        }
        out.push('\n');
        let _ = write!(out, "{:<w$}", label);
        for (r, e) in reference.iter().zip(&chosen) {
            let _ = write!(out, "{:>10}{:>14}", kcycles(e.total()), speedup_report(r, e).to_string());
        }
        out.push('\n');
        let _ = write!(out, "{:<w$}", "  relative to DMA");
        for (d, e) in dma.iter().zip(&chosen) {
            let _ = write!(out, "{:>10}{:>14}", "", speedup_report(d, e).to_string());
        }
        out.push('\n');
    }

    out.push_str("\nformula sheet\n");
    let _ = writeln!(
        out,
        "  dma_factor = {:.3} (least-squares fit to DMA+SW_OPT gives {:.3}, clamped to [0, 1])",
        consts.dma_factor,
        dma_factor_fit(&consts.baselines)
    );
    for e in &chosen {
        let _ = writeln!(out, "  [{}]", e.phase);
        for f in &e.formulas {
            let _ = writeln!(out, "    {f}");
        }
    }
    out.push('\n');

    let _ = writeln!(out, "config={cfg}");
    for (key, on) in cfg.flags() {
        let _ = writeln!(out, "config.{key}={on}");
    }
    let _ = writeln!(out, "dma_factor={:.6}", consts.dma_factor);
    let _ = writeln!(out, "dma_factor_raw={:.6}", dma_factor_fit(&consts.baselines));
    for ((r, d), e) in reference.iter().zip(&dma).zip(&chosen) {
        let name = e.phase.name();
        let _ = writeln!(out, "{name}.total={}", e.total());
        for (cat, v) in &e.categories {
            let _ = writeln!(out, "{name}.{}={v}", cat.key());
        }
        let _ = writeln!(out, "{name}.reference={}", r.total());
        let _ = writeln!(out, "{name}.improvement_vs_reference={:.1}", speedup_report(r, e).percent);
        let _ = writeln!(out, "{name}.improvement_vs_dma={:.1}", speedup_report(d, e).percent);
    }
    out
}
