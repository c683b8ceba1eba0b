//! Single- and multi-copy LOCC comparability of state pairs.

pub mod theorem1;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::majorization::{majorized_by, tensor_power_bounded, DEFAULT_MAX_TENSOR_LEN};
use crate::rng::{RngStream, StreamDomain};
use crate::sampling::sample_haar_schmidt_with;
use crate::schmidt::SchmidtVector;
use crate::stats::Histogram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Comparable,
    Incomparable,
}

impl Verdict {
    pub fn is_comparable(self) -> bool {
        self == Verdict::Comparable
    }

    pub fn is_incomparable(self) -> bool {
        self == Verdict::Incomparable
    }
}

/// A source/target pair oriented so that `E(psi) >= E(phi)`; the
/// transformation under study is always `psi -> phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePair {
    psi: SchmidtVector,
    phi: SchmidtVector,
    e_psi: f64,
    e_phi: f64,
}

impl StatePair {
    pub fn psi(&self) -> &SchmidtVector {
        &self.psi
    }

    pub fn phi(&self) -> &SchmidtVector {
        &self.phi
    }

    pub fn e_psi(&self) -> f64 {
        self.e_psi
    }

    pub fn e_phi(&self) -> f64 {
        self.e_phi
    }

    pub fn dim(&self) -> usize {
        self.psi.dim()
    }
}

/// Orients `(a, b)` by entropy; on a tie `a` becomes the source.
pub fn orient_pair(a: SchmidtVector, b: SchmidtVector) -> Result<StatePair> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let (ea, eb) = (a.entropy(), b.entropy());
    Ok(if ea >= eb {
        StatePair {
            psi: a,
            phi: b,
            e_psi: ea,
            e_phi: eb,
        }
    } else {
        StatePair {
            psi: b,
            phi: a,
            e_psi: eb,
            e_phi: ea,
        }
    })
}

/// Two consecutive Haar draws from `stream`, oriented.
pub fn sample_pair(d: usize, stream: RngStream) -> Result<StatePair> {
    let mut rng = stream.rng();
    let a = sample_haar_schmidt_with(d, &mut rng)?;
    let b = sample_haar_schmidt_with(d, &mut rng)?;
    orient_pair(a, b)
}

/// Stream of the `index`-th random pair of an experiment.
///
/// `base.stream_id` offsets the pair index, so callers holding distinct base
/// streams get disjoint pair sets.
pub fn pair_stream(base: RngStream, d: usize, index: u64) -> RngStream {
    RngStream::for_task(base.seed, StreamDomain::Pairs, d, base.stream_id + index)
}

/// `psi^{⊗k} ≺ phi^{⊗k}`.
pub fn classify(pair: &StatePair, k: u32) -> Result<Verdict> {
    classify_bounded(pair, k, DEFAULT_MAX_TENSOR_LEN)
}

pub fn classify_bounded(pair: &StatePair, k: u32, max_len: usize) -> Result<Verdict> {
    let x = tensor_power_bounded(&pair.psi, k, max_len)?;
    let y = tensor_power_bounded(&pair.phi, k, max_len)?;
    Ok(if majorized_by(&x, &y) {
        Verdict::Comparable
    } else {
        Verdict::Incomparable
    })
}

/// `E(psi^{⊗k}) - E(phi^{⊗k}) = k (E(psi) - E(phi))`, in bits.
pub fn delta_e(pair: &StatePair, k: u32) -> f64 {
    k as f64 * (pair.e_psi - pair.e_phi)
}

/// Verdicts and entanglement gaps of one pair for `k = 1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparabilityRecord {
    pub pair: StatePair,
    verdicts: Vec<Verdict>,
    deltas: Vec<f64>,
}

impl ComparabilityRecord {
    pub fn evaluate(pair: StatePair, k_max: u32) -> Result<Self> {
        Self::evaluate_bounded(pair, k_max, DEFAULT_MAX_TENSOR_LEN)
    }

    pub fn evaluate_bounded(pair: StatePair, k_max: u32, max_len: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(Error::ZeroCopies);
        }
        let mut verdicts = Vec::with_capacity(k_max as usize);
        let mut deltas = Vec::with_capacity(k_max as usize);
        for k in 1..=k_max {
            verdicts.push(classify_bounded(&pair, k, max_len)?);
            deltas.push(delta_e(&pair, k));
        }
        Ok(ComparabilityRecord {
            pair,
            verdicts,
            deltas,
        })
    }

    pub fn k_max(&self) -> u32 {
        self.verdicts.len() as u32
    }

    /// Verdict at `k` copies (`1 <= k <= k_max`).
    pub fn verdict(&self, k: u32) -> Option<Verdict> {
        self.verdicts.get((k as usize).checked_sub(1)?).copied()
    }

    pub fn delta(&self, k: u32) -> Option<f64> {
        self.deltas.get((k as usize).checked_sub(1)?).copied()
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    /// Whether the pair is incomparable at every `k` in `1..=m`.
    pub fn incomparable_through(&self, m: u32) -> bool {
        m >= 1
            && m <= self.k_max()
            && self.verdicts[..m as usize].iter().all(|v| v.is_incomparable())
    }
}

/// Fraction of `n_pairs` random oriented pairs in `d ⊗ d` that are
/// incomparable at `k` copies. Deterministic in `(rng, d, k, n_pairs)`.
pub fn incomparable_fraction(d: usize, k: u32, n_pairs: u64, rng: RngStream) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidDimension { dim: d, min: 3 });
    }
    if n_pairs == 0 {
        return Err(Error::InvalidBins("n_pairs must be positive".into()));
    }
    let incomparable = (0..n_pairs)
        .into_par_iter()
        .map(|i| {
            let pair = sample_pair(d, pair_stream(rng, d, i))?;
            Ok(classify(&pair, k)?.is_incomparable() as u64)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();
    Ok(incomparable as f64 / n_pairs as f64)
}

/// Per-bin counts of incomparable pairs against all pairs, keyed by the
/// k-copy entanglement gap.
#[derive(Debug, Clone, PartialEq)]
pub struct IncompProfile {
    pub incomparable: Histogram,
    pub total: Histogram,
}

impl IncompProfile {
    /// Empty profile with bins of `width` on `[0, k log2 d]`.
    pub fn new(d: usize, k: u32, width: f64) -> Result<Self> {
        let hi = k as f64 * (d as f64).log2();
        // the upper bound itself is reachable only by (uniform, product) pairs
        let h = Histogram::with_width(0.0, hi + width * 1e-6, width)?;
        Ok(IncompProfile {
            incomparable: h.clone(),
            total: h,
        })
    }

    pub fn add(&mut self, delta: f64, verdict: Verdict) -> Result<()> {
        self.total.add(delta)?;
        if verdict.is_incomparable() {
            self.incomparable.add(delta)?;
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &IncompProfile) -> Result<()> {
        self.incomparable.merge(&other.incomparable)?;
        self.total.merge(&other.total)
    }

    /// `(f_incomp, f_comp)` per bin; `None` for bins with no pairs.
    pub fn fractions(&self) -> Vec<Option<(f64, f64)>> {
        self.incomparable
            .ratios(&self.total)
            .expect("profile histograms share edges")
            .into_iter()
            .map(|r| r.map(|f| (f, 1.0 - f)))
            .collect()
    }

    pub fn edges(&self) -> &[f64] {
        self.total.edges()
    }
}

/// Histogram of `(f_incomp, f_comp)` over the k-copy entanglement gap for
/// `n_pairs` random oriented pairs.
pub fn incomp_frequency_profile(
    d: usize,
    k: u32,
    n_pairs: u64,
    bin_width: f64,
    rng: RngStream,
) -> Result<IncompProfile> {
    if d < 3 {
        return Err(Error::InvalidDimension { dim: d, min: 3 });
    }
    let mut profile = IncompProfile::new(d, k, bin_width)?;
    let points = (0..n_pairs)
        .into_par_iter()
        .map(|i| {
            let pair = sample_pair(d, pair_stream(rng, d, i))?;
            Ok((delta_e(&pair, k), classify(&pair, k)?))
        })
        .collect::<Result<Vec<_>>>()?;
    for (delta, verdict) in points {
        profile.add(delta, verdict)?;
    }
    Ok(profile)
}
