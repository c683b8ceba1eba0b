use rayon::prelude::*;

use locc_core::transform::{classify_bounded, pair_stream, sample_pair, IncompProfile};
use locc_core::Verdict;

use super::{base_stream, OutputTable};
use crate::config::{Experiment, ResolvedConfig};
use crate::table::ResultTable;
use crate::LabError;

pub const PROFILE_SCHEMA: &str = "comparability.profile.v1";
pub const SUMMARY_SCHEMA: &str = "comparability.summary.v1";

/// Incomparable fraction of random pairs per `(d, k)`, overall and binned by
/// the k-copy gap. The same pairs are classified at every `k`.
pub fn run_comparability(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let exp = Experiment::Comparability;
    let base = base_stream(cfg);
    let mut out = Vec::new();
    let mut summary = ResultTable::new(&[
        "d",
        "k",
        "n_pairs",
        "n_incomparable",
        "pct_incomparable",
        "pct_stderr",
    ]);
    for &d in &cfg.d {
        let pairs = (0..cfg.n_pairs)
            .into_par_iter()
            .map(|i| -> Result<(f64, Vec<Verdict>), LabError> {
                let pair = sample_pair(d, pair_stream(base, d, i))?;
                let verdicts = (1..=cfg.k_max)
                    .map(|k| classify_bounded(&pair, k, cfg.max_tensor_len))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((pair.e_psi() - pair.e_phi(), verdicts))
            })
            .collect::<Result<Vec<_>, _>>()?;

        for k in 1..=cfg.k_max {
            let mut profile = IncompProfile::new(d, k, cfg.delta_bin_width)?;
            let mut incomparable = 0u64;
            for (gap, verdicts) in &pairs {
                let v = verdicts[k as usize - 1];
                profile.add(k as f64 * gap, v)?;
                incomparable += v.is_incomparable() as u64;
            }
            let mut table = ResultTable::new(&[
                "delta_lo",
                "delta_hi",
                "n_pairs",
                "n_incomparable",
                "f_incomp",
                "f_comp",
            ]);
            let edges = profile.edges();
            for (i, f) in profile.fractions().into_iter().enumerate() {
                let Some((f_incomp, f_comp)) = f else { continue };
                table.push(vec![
                    edges[i].into(),
                    edges[i + 1].into(),
                    profile.total.counts()[i].into(),
                    profile.incomparable.counts()[i].into(),
                    f_incomp.into(),
                    f_comp.into(),
                ]);
            }
            out.push(OutputTable::per_dim(exp, d, k, PROFILE_SCHEMA, table));

            let n = cfg.n_pairs as f64;
            let p = incomparable as f64 / n;
            summary.push(vec![
                d.into(),
                k.into(),
                cfg.n_pairs.into(),
                incomparable.into(),
                (100.0 * p).into(),
                (100.0 * (p * (1.0 - p) / n).sqrt()).into(),
            ]);
        }
    }
    out.push(OutputTable::summary(exp, SUMMARY_SCHEMA, summary));
    Ok(out)
}
