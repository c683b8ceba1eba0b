use locc_core::catalysis::{required_incomparable, EnsembleAccumulator};
use locc_core::{HierarchyTag, StrongRule};

use super::catalysts::{band_table, BAND_COLUMNS};
use super::sweep::{sweep, PairScan};
use super::{range_edges, OutputTable};
use crate::config::{Experiment, ResolvedConfig};
use crate::table::{Cell, ResultTable};
use crate::LabError;

pub const BANDS_SCHEMA: &str = "hierarchy.bands.v1";
pub const SUMMARY_SCHEMA: &str = "hierarchy.summary.v1";

/// `(m, n)`: incomparable through `m` copies, catalyzed at `n`.
const TAGS: [(u32, u32); 4] = [(2, 1), (3, 2), (3, 1), (4, 1)];

fn member(p: &PairScan, m: u32, n: u32, rule: StrongRule) -> bool {
    required_incomparable(m, n, rule)
        .into_iter()
        .all(|k| p.incomparable_at(k))
}

/// Assisted and strong catalysts. Classification runs to `k_max + 1` copies,
/// so `k_max = 3` covers every tag.
///
/// Per `(d, n)`: bands over the n-copy gap, one block of rows per tag
/// catalyzed at `n` copies. The summary holds the per-tag moments; tags
/// without any catalyst are omitted.
pub fn run_hierarchy(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let exp = Experiment::Hierarchy;
    let rule: StrongRule = cfg.strong_rule.into();
    let depth = cfg.k_max + 1;
    let tags: Vec<(u32, u32)> = TAGS.into_iter().filter(|&(m, _)| m <= depth).collect();
    let mut catalyzed: Vec<u32> = tags.iter().map(|&(_, n)| n).collect();
    catalyzed.sort_unstable();
    catalyzed.dedup();

    let mut out = Vec::new();
    let mut summary = ResultTable::new(&[
        "d",
        "tag",
        "m",
        "n",
        "n_pairs",
        "n_with_catalyst",
        "mean_e_avg",
        "mean_e_std",
        "min_e_avg",
        "min_e_std",
    ]);
    let mut band_columns = vec!["tag", "m", "n"];
    band_columns.extend(BAND_COLUMNS);

    for &d in &cfg.d {
        let pairs = sweep(cfg, d, depth, |verdicts| {
            let p = |k: u32| verdicts[k as usize - 1].is_incomparable();
            catalyzed
                .iter()
                .copied()
                .filter(|&n| {
                    tags.iter().any(|&(m, tn)| {
                        tn == n && required_incomparable(m, n, rule).into_iter().all(p)
                    })
                })
                .collect()
        })?;

        for &n in &catalyzed {
            let edges = range_edges(d, n, cfg.delta_bin_width)?;
            let mut table = ResultTable::new(&band_columns);
            for &(m, tn) in tags.iter().filter(|&&(_, tn)| tn == n) {
                let label = HierarchyTag::from_copies(m, tn)?.label();
                let bands = band_table(&pairs, &edges, n, n, |p| member(p, m, n, rule));
                for row in bands.rows() {
                    let mut full: Vec<Cell> = vec![label.as_str().into(), m.into(), n.into()];
                    full.extend(row.iter().cloned());
                    table.push(full);
                }
            }
            out.push(OutputTable::per_dim(exp, d, n, BANDS_SCHEMA, table));
        }

        for &(m, n) in &tags {
            let mut acc = EnsembleAccumulator::default();
            let mut members = 0u64;
            for p in pairs.iter().filter(|p| member(p, m, n, rule)) {
                members += 1;
                if let Some(s) = p.scan(n) {
                    acc.push(&s.summary);
                }
            }
            let Some(moments) = acc.finish() else { continue };
            summary.push(vec![
                d.into(),
                HierarchyTag::from_copies(m, n)?.label().into(),
                m.into(),
                n.into(),
                members.into(),
                moments.contributing.into(),
                moments.mean_avg.into(),
                moments.mean_std.into(),
                moments.min_avg.into(),
                moments.min_std.into(),
            ]);
        }
    }
    out.push(OutputTable::summary(exp, SUMMARY_SCHEMA, summary));
    Ok(out)
}
