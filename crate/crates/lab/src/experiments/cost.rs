use locc_core::stats::bin_index;

use super::sweep::{sweep, PairScan};
use super::{mean, range_edges, OutputTable};
use crate::config::{Experiment, ResolvedConfig};
use crate::table::ResultTable;
use crate::LabError;

pub const BANDS_SCHEMA: &str = "cost-efficient.bands.v1";
pub const SUMMARY_SCHEMA: &str = "cost-efficient.summary.v1";

const COLUMNS: [&str; 9] = [
    "n_pairs",
    "n_with_catalyst",
    "n_catalysts",
    "n_below_phi",
    "mean_minus_e_psi",
    "mean_minus_e_phi",
    "min_minus_e_psi",
    "min_minus_e_phi",
    "avg_n_chi",
];

#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    pairs: u64,
    with_catalyst: u64,
    catalysts: u64,
    below_phi: u64,
    mean_psi: f64,
    mean_phi: f64,
    min_psi: f64,
    min_phi: f64,
}

impl Acc {
    fn push(&mut self, p: &PairScan) {
        self.pairs += 1;
        let Some(scan) = p.scan(1) else { return };
        self.catalysts += scan.summary.found();
        self.below_phi += scan.below_phi;
        if let (Some(m), Some(lo)) = (scan.summary.mean_e(), scan.summary.min_e()) {
            self.with_catalyst += 1;
            self.mean_psi += m - p.e_psi;
            self.mean_phi += m - p.e_phi;
            self.min_psi += lo - p.e_psi;
            self.min_phi += lo - p.e_phi;
        }
    }

    fn cells(&self) -> Vec<crate::table::Cell> {
        let w = self.with_catalyst;
        vec![
            self.pairs.into(),
            w.into(),
            self.catalysts.into(),
            self.below_phi.into(),
            mean(self.mean_psi, w).into(),
            mean(self.mean_phi, w).into(),
            mean(self.min_psi, w).into(),
            mean(self.min_phi, w).into(),
            mean(self.catalysts as f64, self.pairs).into(),
        ]
    }
}

fn admitted(p: &PairScan) -> bool {
    p.incomparable_at(1) && !p.incomparable_at(2)
}

/// Single-copy catalysts of pairs that are incomparable at one copy but
/// comparable at two, measured against the pair's own entanglement.
///
/// Per `d`: bands over the single-copy gap with the average over pairs of
/// `<E(chi)> - E(psi)`, `<E(chi)> - E(phi)` and the same for the minimum.
/// `n_below_phi` counts catalysts no more entangled than either state.
pub fn run_cost_efficient(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let exp = Experiment::CostEfficient;
    let mut out = Vec::new();
    let mut summary_columns = vec!["d"];
    summary_columns.extend(COLUMNS);
    let mut summary = ResultTable::new(&summary_columns);
    let mut band_columns = vec!["delta_lo", "delta_hi"];
    band_columns.extend(COLUMNS);

    for &d in &cfg.d {
        let pairs = sweep(cfg, d, 2, |v| {
            if v[0].is_incomparable() && v[1].is_comparable() {
                vec![1]
            } else {
                vec![]
            }
        })?;
        let edges = range_edges(d, 1, cfg.delta_bin_width)?;
        let mut bands = vec![Acc::default(); edges.len() - 1];
        let mut total = Acc::default();
        for p in pairs.iter().filter(|p| admitted(p)) {
            total.push(p);
            if let Some(i) = bin_index(&edges, p.delta(1)) {
                bands[i].push(p);
            }
        }
        let mut table = ResultTable::new(&band_columns);
        for (i, b) in bands.iter().enumerate().filter(|(_, b)| b.pairs > 0) {
            let mut row = vec![edges[i].into(), edges[i + 1].into()];
            row.extend(b.cells());
            table.push(row);
        }
        out.push(OutputTable::per_dim(exp, d, 1, BANDS_SCHEMA, table));

        let mut row = vec![d.into()];
        row.extend(total.cells());
        summary.push(row);
    }
    out.push(OutputTable::summary(exp, SUMMARY_SCHEMA, summary));
    Ok(out)
}
