use locc_core::catalysis::EnsembleAccumulator;
use locc_core::stats::bin_index;

use super::sweep::{sweep, PairScan};
use super::{mean, range_edges, OutputTable};
use crate::config::{Experiment, ResolvedConfig};
use crate::table::ResultTable;
use crate::LabError;

pub const BANDS_SCHEMA: &str = "catalysts.bands.v1";
pub const SUMMARY_SCHEMA: &str = "catalysts.summary.v1";

pub(super) const BAND_COLUMNS: [&str; 9] = [
    "delta_lo",
    "delta_hi",
    "n_pairs",
    "n_feasible",
    "n_with_catalyst",
    "mean_e_chi",
    "min_e_chi",
    "avg_n_chi",
    "avg_n_chi_feasible",
];

/// Per-band accumulation over the pairs whose gap falls in the band.
#[derive(Debug, Clone, Copy, Default)]
pub(super) struct Band {
    pub pairs: u64,
    pub feasible: u64,
    pub found: u64,
    pub with_catalyst: u64,
    pub mean_sum: f64,
    pub min_sum: f64,
}

impl Band {
    pub fn push(&mut self, pair: &PairScan, copies: u32) {
        self.pairs += 1;
        self.feasible += pair.feasible as u64;
        let Some(scan) = pair.scan(copies) else { return };
        self.found += scan.summary.found();
        if let (Some(m), Some(lo)) = (scan.summary.mean_e(), scan.summary.min_e()) {
            self.with_catalyst += 1;
            self.mean_sum += m;
            self.min_sum += lo;
        }
    }
}

/// Banded catalyst statistics over the `k`-copy gap for the pairs selected by
/// `member`, searched at `copies` copies. Empty bands are omitted.
pub(super) fn band_table(
    pairs: &[PairScan],
    edges: &[f64],
    gap_copies: u32,
    copies: u32,
    member: impl Fn(&PairScan) -> bool,
) -> ResultTable {
    let mut bands = vec![Band::default(); edges.len() - 1];
    for p in pairs.iter().filter(|p| member(p)) {
        if let Some(i) = bin_index(edges, p.delta(gap_copies)) {
            bands[i].push(p, copies);
        }
    }
    let mut table = ResultTable::new(&BAND_COLUMNS);
    for (i, b) in bands.iter().enumerate().filter(|(_, b)| b.pairs > 0) {
        table.push(vec![
            edges[i].into(),
            edges[i + 1].into(),
            b.pairs.into(),
            b.feasible.into(),
            b.with_catalyst.into(),
            mean(b.mean_sum, b.with_catalyst).into(),
            mean(b.min_sum, b.with_catalyst).into(),
            mean(b.found as f64, b.pairs).into(),
            mean(b.found as f64, b.feasible).into(),
        ]);
    }
    table
}

/// Catalysts of pairs that are incomparable at `k` copies, searched at `k`
/// copies with one candidate pool per pair shared across `k`.
///
/// Per `(d, k)`: bands over the k-copy gap with the average over pairs of the
/// mean and minimum catalyst entanglement, and the catalysts found per
/// incomparable pair (`avg_n_chi`) and per pair meeting the endpoint
/// condition (`avg_n_chi_feasible`). The summary holds the averages and
/// spreads over pairs of the per-pair mean and minimum.
pub fn run_catalysts(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let exp = Experiment::Catalysts;
    let mut out = Vec::new();
    let mut summary = ResultTable::new(&[
        "d",
        "k",
        "n_pairs",
        "n_incomparable",
        "n_feasible",
        "n_with_catalyst",
        "n_candidates",
        "d_chi",
        "mean_e_avg",
        "mean_e_std",
        "min_e_avg",
        "min_e_std",
    ]);
    for &d in &cfg.d {
        let pairs = sweep(cfg, d, cfg.k_max, |verdicts| {
            (1..=verdicts.len() as u32)
                .filter(|&k| verdicts[k as usize - 1].is_incomparable())
                .collect()
        })?;
        for k in 1..=cfg.k_max {
            let edges = range_edges(d, k, cfg.delta_bin_width)?;
            let member = |p: &PairScan| p.incomparable_at(k);
            let table = band_table(&pairs, &edges, k, k, member);
            out.push(OutputTable::per_dim(exp, d, k, BANDS_SCHEMA, table));

            let mut acc = EnsembleAccumulator::default();
            let (mut incomparable, mut feasible) = (0u64, 0u64);
            for p in pairs.iter().filter(|p| member(p)) {
                incomparable += 1;
                feasible += p.feasible as u64;
                if let Some(s) = p.scan(k) {
                    acc.push(&s.summary);
                }
            }
            let moments = acc.finish();
            summary.push(vec![
                d.into(),
                k.into(),
                cfg.n_pairs.into(),
                incomparable.into(),
                feasible.into(),
                moments.map_or(0, |m| m.contributing).into(),
                cfg.n_candidates.into(),
                cfg.d_chi_for(d).into(),
                moments.map(|m| m.mean_avg).into(),
                moments.map(|m| m.mean_std).into(),
                moments.map(|m| m.min_avg).into(),
                moments.map(|m| m.min_std).into(),
            ]);
        }
    }
    out.push(OutputTable::summary(exp, SUMMARY_SCHEMA, summary));
    Ok(out)
}
