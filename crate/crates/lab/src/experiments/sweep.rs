//! Per-pair work shared by the catalysis experiments: sample a pair, classify
//! it at every copy count up to a depth, and scan one candidate pool at the
//! copy counts the experiment asks for.

use rayon::prelude::*;

use locc_core::catalysis::candidate_stream;
use locc_core::transform::{classify_bounded, pair_stream, sample_pair};
use locc_core::{catalyst_feasible, CandidatePool, CatalystSummary, CatalystTester, Verdict};

use crate::config::ResolvedConfig;
use crate::LabError;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub copies: u32,
    pub summary: CatalystSummary,
    /// Catalysts with `E(chi) <= E(phi)`.
    pub below_phi: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairScan {
    pub e_psi: f64,
    pub e_phi: f64,
    /// Verdicts at `k = 1..=depth`.
    pub verdicts: Vec<Verdict>,
    pub feasible: bool,
    pub scans: Vec<ScanResult>,
}

impl PairScan {
    /// Single-copy gap `E(psi) - E(phi)`; the k-copy gap is `k` times this.
    pub fn delta(&self, k: u32) -> f64 {
        k as f64 * (self.e_psi - self.e_phi)
    }

    pub fn incomparable_at(&self, k: u32) -> bool {
        self.verdicts[k as usize - 1].is_incomparable()
    }

    pub fn incomparable_through(&self, m: u32) -> bool {
        (1..=m).all(|k| self.incomparable_at(k))
    }

    pub fn scan(&self, copies: u32) -> Option<&ScanResult> {
        self.scans.iter().find(|s| s.copies == copies)
    }
}

/// Processes pairs `0..n_pairs` of dimension `d`. `wanted` maps the verdicts
/// to the copy counts to search; candidates are drawn only for feasible pairs
/// that need at least one search, once per pair. An infeasible pair gets an
/// empty result at each wanted copy count.
pub fn sweep<F>(cfg: &ResolvedConfig, d: usize, depth: u32, wanted: F) -> Result<Vec<PairScan>, LabError>
where
    F: Fn(&[Verdict]) -> Vec<u32> + Sync,
{
    let base = super::base_stream(cfg);
    let d_chi = cfg.d_chi_for(d);
    (0..cfg.n_pairs)
        .into_par_iter()
        .map(|i| -> Result<PairScan, LabError> {
            let pair = sample_pair(d, pair_stream(base, d, i))?;
            let verdicts = (1..=depth)
                .map(|k| classify_bounded(&pair, k, cfg.max_tensor_len))
                .collect::<Result<Vec<_>, _>>()?;
            let feasible = catalyst_feasible(&pair);
            let copies = wanted(&verdicts);
            let mut scans = Vec::with_capacity(copies.len());
            if feasible && !copies.is_empty() {
                let pool = CandidatePool::sample(
                    cfg.n_candidates as usize,
                    d_chi,
                    candidate_stream(base, d, i),
                )?;
                for n in copies {
                    let mut tester = CatalystTester::new(&pair, n, d_chi, cfg.max_tensor_len)?;
                    let mut summary = CatalystSummary::new(pool.len() as u64);
                    let mut below_phi = 0;
                    for j in tester.hits(&pool) {
                        let e = pool.entropy(j);
                        summary.push(e);
                        below_phi += (e <= pair.e_phi()) as u64;
                    }
                    scans.push(ScanResult {
                        copies: n,
                        summary,
                        below_phi,
                    });
                }
            } else {
                scans.extend(copies.into_iter().map(|n| ScanResult {
                    copies: n,
                    summary: CatalystSummary::new(0),
                    below_phi: 0,
                }));
            }
            Ok(PairScan {
                e_psi: pair.e_psi(),
                e_phi: pair.e_phi(),
                verdicts,
                feasible,
                scans,
            })
        })
        .collect()
}
