use rayon::prelude::*;

use locc_core::majorization::tensor_power_bounded;
use locc_core::stats::Histogram;
use locc_core::{entropy, predicted_mean_entropy, sample_haar_schmidt, RngStream, RunningMoments, StreamDomain};

use super::{range_edges, OutputTable};
use crate::config::{Experiment, ResolvedConfig};
use crate::table::ResultTable;
use crate::LabError;

pub const HISTOGRAM_SCHEMA: &str = "entanglement-dist.histogram.v1";
pub const SUMMARY_SCHEMA: &str = "entanglement-dist.summary.v1";

/// Entropy of `n_states` Haar states and of their `k`-fold tensor powers.
///
/// Per `(d, k)`: a histogram of `E` normalized by the sample count. The
/// summary holds `<E>`, the population standard deviation and the large-`d`
/// estimate `k (log2 d - 1/2)`.
pub fn run_entanglement_dist(cfg: &ResolvedConfig) -> Result<Vec<OutputTable>, LabError> {
    let exp = Experiment::EntanglementDist;
    let mut out = Vec::new();
    let mut summary = ResultTable::new(&[
        "d",
        "k",
        "n_states",
        "mean_e",
        "std_e",
        "predicted_mean_e",
        "max_e",
    ]);
    for &d in &cfg.d {
        let samples = (0..cfg.n_states)
            .into_par_iter()
            .map(|i| -> Result<Vec<f64>, LabError> {
                let psi = sample_haar_schmidt(d, RngStream::for_task(cfg.seed, StreamDomain::States, d, i))?;
                (1..=cfg.k_max)
                    .map(|k| {
                        if k == 1 {
                            Ok(psi.entropy())
                        } else {
                            Ok(entropy(&tensor_power_bounded(&psi, k, cfg.max_tensor_len)?))
                        }
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()?;

        for k in 1..=cfg.k_max {
            let mut hist = Histogram::new(range_edges(d, k, cfg.entropy_bin_width)?)?;
            let mut moments = RunningMoments::new();
            for s in &samples {
                let e = s[k as usize - 1];
                hist.add(e)?;
                moments.push(e);
            }
            let mut table = ResultTable::new(&["e_lo", "e_hi", "count", "f_norm"]);
            let n = cfg.n_states as f64;
            for (i, &c) in hist.counts().iter().enumerate() {
                let edges = hist.edges();
                table.push(vec![edges[i].into(), edges[i + 1].into(), c.into(), (c as f64 / n).into()]);
            }
            out.push(OutputTable::per_dim(exp, d, k, HISTOGRAM_SCHEMA, table));

            let predicted = k as f64 * predicted_mean_entropy(d, d);
            summary.push(vec![
                d.into(),
                k.into(),
                cfg.n_states.into(),
                moments.mean().into(),
                moments.std().into(),
                predicted.into(),
                (k as f64 * (d as f64).log2()).into(),
            ]);
        }
    }
    out.push(OutputTable::summary(exp, SUMMARY_SCHEMA, summary));
    Ok(out)
}
