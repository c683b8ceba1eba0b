//! Entanglement catalysis: verification, randomized search, per-pair
//! quantifiers and the assisted/strong/cost-efficient hierarchy.
//!
//! A state `χ` catalyzes `psi -> phi` at `k` copies when
//! `psi^{⊗k} ⊗ χ ≺ phi^{⊗k} ⊗ χ` although `psi^{⊗k} ⊀ phi^{⊗k}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::majorization::{
    majorized_by, tensor_majorized_by, tensor_power_bounded, tensor_product_bounded, MergeScratch,
    DEFAULT_MAX_TENSOR_LEN, EPS_MAJOR,
};
use crate::rng::{RngStream, StreamDomain};
use crate::sampling::sample_haar_schmidt_with;
use crate::schmidt::SchmidtVector;
use crate::stats::RunningMoments;
use crate::transform::{classify_bounded, StatePair, Verdict};

/// Endpoint condition `α1 <= β1` and `α_d >= β_d`.
///
/// Necessary for a catalyst of any dimension to exist, and the only test the
/// search uses to skip pairs; it is never taken as proof that a catalyst of a
/// given dimension exists.
pub fn catalyst_feasible(pair: &StatePair) -> bool {
    let (a, b) = (pair.psi(), pair.phi());
    a.first() <= b.first() + EPS_MAJOR && a.last() >= b.last() - EPS_MAJOR
}

/// Reference check: materializes both products and compares prefix sums.
pub fn is_catalyst(pair: &StatePair, chi: &SchmidtVector, k: u32) -> Result<bool> {
    is_catalyst_bounded(pair, chi, k, DEFAULT_MAX_TENSOR_LEN)
}

pub fn is_catalyst_bounded(
    pair: &StatePair,
    chi: &SchmidtVector,
    k: u32,
    max_len: usize,
) -> Result<bool> {
    let x = tensor_power_bounded(pair.psi(), k, max_len)?;
    let y = tensor_power_bounded(pair.phi(), k, max_len)?;
    let xc = tensor_product_bounded(&x, chi, max_len)?;
    let yc = tensor_product_bounded(&y, chi, max_len)?;
    Ok(majorized_by(&xc, &yc))
}

/// Tests many candidates against one pair at a fixed copy count, reusing the
/// tensor powers and merge buffers.
#[derive(Debug, Clone)]
pub struct CatalystTester {
    k: u32,
    x: Vec<f64>,
    y: Vec<f64>,
    scratch: MergeScratch,
}

impl CatalystTester {
    pub fn new(pair: &StatePair, k: u32, d_chi: usize, max_len: usize) -> Result<Self> {
        let x = tensor_power_bounded(pair.psi(), k, max_len)?;
        let y = tensor_power_bounded(pair.phi(), k, max_len)?;
        let len = x.dim() as u128 * d_chi as u128;
        if len > max_len as u128 {
            return Err(Error::TensorTooLarge { len, max: max_len });
        }
        Ok(CatalystTester {
            k,
            x: x.into_inner(),
            y: y.into_inner(),
            scratch: MergeScratch::default(),
        })
    }

    pub fn copies(&self) -> u32 {
        self.k
    }

    /// Whether the pair itself converts at this copy count.
    pub fn comparable(&self) -> bool {
        majorized_by(&self.x, &self.y)
    }

    /// `psi^{⊗k} ⊗ chi ≺ phi^{⊗k} ⊗ chi` for a descending-sorted `chi`.
    pub fn test(&mut self, chi: &[f64]) -> bool {
        tensor_majorized_by(&self.x, &self.y, chi, &mut self.scratch)
    }

    /// Indices of the pool entries that pass [`CatalystTester::test`].
    pub fn hits(&mut self, pool: &CandidatePool) -> Vec<usize> {
        (0..pool.len()).filter(|&i| self.test(pool.get(i))).collect()
    }
}

/// A flat batch of Haar-random candidate spectra with cached entropies.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidatePool {
    d_chi: usize,
    probs: Vec<f64>,
    entropies: Vec<f64>,
}

impl CandidatePool {
    /// Draws `n` spectra in `d_chi ⊗ d_chi` sequentially from `stream`.
    pub fn sample(n: usize, d_chi: usize, stream: RngStream) -> Result<Self> {
        let mut rng = stream.rng();
        let mut probs = Vec::with_capacity(n * d_chi);
        let mut entropies = Vec::with_capacity(n);
        for _ in 0..n {
            let v = sample_haar_schmidt_with(d_chi, &mut rng)?;
            entropies.push(v.entropy());
            probs.extend_from_slice(&v);
        }
        Ok(CandidatePool {
            d_chi,
            probs,
            entropies,
        })
    }

    pub fn from_vectors(vectors: &[SchmidtVector]) -> Result<Self> {
        let d_chi = vectors.first().map(|v| v.dim()).unwrap_or(0);
        let mut probs = Vec::with_capacity(vectors.len() * d_chi);
        let mut entropies = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.dim() != d_chi {
                return Err(Error::DimensionMismatch {
                    left: d_chi,
                    right: v.dim(),
                });
            }
            probs.extend_from_slice(v);
            entropies.push(v.entropy());
        }
        Ok(CandidatePool {
            d_chi,
            probs,
            entropies,
        })
    }

    pub fn len(&self) -> usize {
        self.entropies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entropies.is_empty()
    }

    pub fn d_chi(&self) -> usize {
        self.d_chi
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.probs[i * self.d_chi..(i + 1) * self.d_chi]
    }

    pub fn entropy(&self, i: usize) -> f64 {
        self.entropies[i]
    }

    pub fn vector(&self, i: usize) -> SchmidtVector {
        SchmidtVector::from_sorted_unchecked(self.get(i).to_vec())
    }
}

/// Stream of the candidate pool searched for the `index`-th pair.
pub fn candidate_stream(base: RngStream, d: usize, index: u64) -> RngStream {
    RngStream::for_task(base.seed, StreamDomain::Candidates, d, base.stream_id + index)
}

/// Where a catalyst was found: the pair, the copy count at which it
/// catalyzes (`n`) and the copy count through which the pair is incomparable
/// (`m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalysisContext {
    pub pair_id: u64,
    pub copies_catalyzed: u32,
    pub copies_incomparable: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalystRecord {
    pub chi: SchmidtVector,
    pub e_chi: f64,
    pub context: CatalysisContext,
}

/// Count, mean and minimum entanglement of the catalysts found for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CatalystSummary {
    pub tested: u64,
    moments: RunningMoments,
    min_e: Option<f64>,
}

impl CatalystSummary {
    pub fn new(tested: u64) -> Self {
        CatalystSummary {
            tested,
            ..Default::default()
        }
    }

    pub fn from_entropies<I: IntoIterator<Item = f64>>(tested: u64, entropies: I) -> Self {
        let mut s = Self::new(tested);
        for e in entropies {
            s.push(e);
        }
        s
    }

    pub fn push(&mut self, e_chi: f64) {
        self.moments.push(e_chi);
        self.min_e = Some(self.min_e.map_or(e_chi, |m| m.min(e_chi)));
    }

    pub fn found(&self) -> u64 {
        self.moments.count()
    }

    /// Mean entanglement of the catalysts found.
    pub fn mean_e(&self) -> Option<f64> {
        self.moments.mean()
    }

    /// Minimum entanglement of the catalysts found.
    pub fn min_e(&self) -> Option<f64> {
        self.min_e
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalystEnsemble {
    pub pair_id: u64,
    pub candidates_tested: u64,
    pub found: Vec<CatalystRecord>,
    /// The endpoint condition failed and no candidates were drawn.
    pub infeasible: bool,
}

impl CatalystEnsemble {
    pub fn mean_e(&self) -> Option<f64> {
        self.summary().mean_e()
    }

    pub fn min_e(&self) -> Option<f64> {
        self.summary().min_e()
    }

    pub fn summary(&self) -> CatalystSummary {
        CatalystSummary::from_entropies(self.candidates_tested, self.found.iter().map(|r| r.e_chi))
    }
}

/// Rejection sampling of catalysts from the Haar ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalystSearch {
    pub k: u32,
    pub n_candidates: usize,
    pub d_chi: usize,
    /// Skip pairs failing [`catalyst_feasible`].
    pub prefilter: bool,
    pub max_len: usize,
}

impl CatalystSearch {
    pub fn new(k: u32, n_candidates: usize, d_chi: usize) -> Self {
        CatalystSearch {
            k,
            n_candidates,
            d_chi,
            prefilter: true,
            max_len: DEFAULT_MAX_TENSOR_LEN,
        }
    }

    pub fn run(&self, pair: &StatePair, pair_id: u64, rng: RngStream) -> Result<CatalystEnsemble> {
        if self.d_chi < 2 {
            return Err(Error::InvalidDimension {
                dim: self.d_chi,
                min: 2,
            });
        }
        let mut tester = CatalystTester::new(pair, self.k, self.d_chi, self.max_len)?;
        if self.prefilter && !catalyst_feasible(pair) {
            return Ok(CatalystEnsemble {
                pair_id,
                candidates_tested: 0,
                found: Vec::new(),
                infeasible: true,
            });
        }
        let mut r = rng.rng();
        let mut found = Vec::new();
        for _ in 0..self.n_candidates {
            let chi = sample_haar_schmidt_with(self.d_chi, &mut r)?;
            if tester.test(&chi) {
                found.push(CatalystRecord {
                    e_chi: chi.entropy(),
                    chi,
                    context: CatalysisContext {
                        pair_id,
                        copies_catalyzed: self.k,
                        copies_incomparable: self.k,
                    },
                });
            }
        }
        Ok(CatalystEnsemble {
            pair_id,
            candidates_tested: self.n_candidates as u64,
            found,
            infeasible: false,
        })
    }
}

/// Draws `n_candidates` Haar spectra in `d_chi ⊗ d_chi` from `rng` and keeps
/// those that catalyze `pair` at `k` copies. Pairs failing the endpoint
/// condition return an empty ensemble flagged infeasible.
pub fn search_catalysts(
    pair: &StatePair,
    k: u32,
    n_candidates: usize,
    d_chi: usize,
    rng: RngStream,
) -> Result<CatalystEnsemble> {
    CatalystSearch::new(k, n_candidates, d_chi).run(pair, 0, rng)
}

/// Averages and population standard deviations, over pairs, of the per-pair
/// mean and minimum catalyst entanglement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleMoments {
    /// Pairs with at least one catalyst.
    pub contributing: u64,
    pub mean_avg: f64,
    pub mean_std: f64,
    pub min_avg: f64,
    pub min_std: f64,
}

/// Moment accumulator behind [`ensemble_moments`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnsembleAccumulator {
    means: RunningMoments,
    mins: RunningMoments,
}

impl EnsembleAccumulator {
    pub fn push(&mut self, s: &CatalystSummary) {
        if let (Some(mean), Some(min)) = (s.mean_e(), s.min_e()) {
            self.means.push(mean);
            self.mins.push(min);
        }
    }

    pub fn merge(&self, other: &EnsembleAccumulator) -> EnsembleAccumulator {
        EnsembleAccumulator {
            means: self.means.merge(&other.means),
            mins: self.mins.merge(&other.mins),
        }
    }

    pub fn finish(&self) -> Option<EnsembleMoments> {
        Some(EnsembleMoments {
            contributing: self.means.count(),
            mean_avg: self.means.mean()?,
            mean_std: self.means.std()?,
            min_avg: self.mins.mean()?,
            min_std: self.mins.std()?,
        })
    }
}

/// Only ensembles with at least one catalyst contribute; `None` when none do.
pub fn ensemble_moments<'a, I>(summaries: I) -> Option<EnsembleMoments>
where
    I: IntoIterator<Item = &'a CatalystSummary>,
{
    let mut acc = EnsembleAccumulator::default();
    for s in summaries {
        acc.push(s);
    }
    acc.finish()
}

/// One incomparable pair's contribution to the banded catalyst count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEntry {
    /// k-copy entanglement gap of the pair.
    pub delta: f64,
    pub n_found: u64,
}

/// Catalysts found per incomparable pair with gap in `[lo, hi)`; `None` if the
/// band holds no pairs.
pub fn avg_catalyst_count(entries: &[BandEntry], band: (f64, f64)) -> Option<f64> {
    let (lo, hi) = band;
    let (pairs, found) = entries
        .iter()
        .filter(|e| e.delta >= lo && e.delta < hi)
        .fold((0u64, 0u64), |(p, f), e| (p + 1, f + e.n_found));
    (pairs > 0).then(|| found as f64 / pairs as f64)
}

/// Position of a catalyst in the hierarchy. `m` is the number of copies
/// through which the pair stays incomparable, `n` the copy count at which the
/// catalyst makes it convertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HierarchyTag {
    /// `χ_{n+1(n)}`.
    OneStep { n: u32 },
    /// `χ_{m(n)}` with `m >= n` outside the named cases.
    GeneralAssisted { m: u32, n: u32 },
    /// `χ_{m(1)}` with `m >= 3`.
    Strong { m: u32 },
    CostEfficient,
}

impl HierarchyTag {
    pub fn from_copies(m: u32, n: u32) -> Result<Self> {
        if n == 0 || m < n {
            return Err(Error::InvalidCopyCounts { m, n });
        }
        Ok(if n == 1 && m >= 3 {
            HierarchyTag::Strong { m }
        } else if m == n + 1 {
            HierarchyTag::OneStep { n }
        } else {
            HierarchyTag::GeneralAssisted { m, n }
        })
    }

    /// `(m, n)`; `None` for cost-efficient catalysts.
    pub fn copies(&self) -> Option<(u32, u32)> {
        match *self {
            HierarchyTag::OneStep { n } => Some((n + 1, n)),
            HierarchyTag::GeneralAssisted { m, n } => Some((m, n)),
            HierarchyTag::Strong { m } => Some((m, 1)),
            HierarchyTag::CostEfficient => None,
        }
    }

    /// Short label such as `chi_3(1)`.
    pub fn label(&self) -> String {
        match self.copies() {
            Some((m, n)) => format!("chi_{m}({n})"),
            None => "chi_cost".to_string(),
        }
    }
}

impl fmt::Display for HierarchyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Which copy counts must be incomparable for a strong catalyst `χ_{m(1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrongRule {
    /// Incomparable at every `k` in `1..=m`.
    #[default]
    AllCopies,
    /// Incomparable at `k = 1` and `k = m` only.
    EndpointsOnly,
}

fn incomparable_at(pair: &StatePair, k: u32, max_len: usize) -> Result<bool> {
    Ok(classify_bounded(pair, k, max_len)? == Verdict::Incomparable)
}

/// Copy counts that must be incomparable for the tag `(m, n)` under `rule`.
pub fn required_incomparable(m: u32, n: u32, rule: StrongRule) -> Vec<u32> {
    let strong = n == 1 && m >= 3;
    if strong && rule == StrongRule::EndpointsOnly {
        vec![1, m]
    } else {
        (1..=m).collect()
    }
}

/// Tags `chi` as an `(m, n)`-assisted catalyst of `pair`, or `None` if the
/// pair converts at some required copy count or `chi` fails at `n` copies.
pub fn classify_assisted(
    pair: &StatePair,
    chi: &SchmidtVector,
    m: u32,
    n: u32,
    rule: StrongRule,
) -> Result<Option<HierarchyTag>> {
    let tag = HierarchyTag::from_copies(m, n)?;
    for k in required_incomparable(m, n, rule) {
        if !incomparable_at(pair, k, DEFAULT_MAX_TENSOR_LEN)? {
            return Ok(None);
        }
    }
    Ok(is_catalyst(pair, chi, n)?.then_some(tag))
}

/// Single-copy catalyst of a pair that is incomparable at one copy but
/// comparable at two, with `E(chi)` at most both `E(psi)` and `E(phi)`.
pub fn classify_cost_efficient(pair: &StatePair, chi: &SchmidtVector) -> Result<bool> {
    let e_chi = chi.entropy();
    if e_chi > pair.e_psi() || e_chi > pair.e_phi() {
        return Ok(false);
    }
    if !incomparable_at(pair, 1, DEFAULT_MAX_TENSOR_LEN)?
        || incomparable_at(pair, 2, DEFAULT_MAX_TENSOR_LEN)?
    {
        return Ok(false);
    }
    is_catalyst(pair, chi, 1)
}

/// One row of the hierarchy table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyRow {
    pub d: usize,
    pub tag: HierarchyTag,
    pub moments: EnsembleMoments,
}

/// Groups per-pair catalyst summaries by `(d, tag)` and reduces each group to
/// its ensemble moments. Groups without any catalyst are omitted.
pub fn hierarchy_moments<I>(entries: I) -> Vec<HierarchyRow>
where
    I: IntoIterator<Item = (usize, HierarchyTag, CatalystSummary)>,
{
    let mut groups: BTreeMap<(usize, HierarchyTag), EnsembleAccumulator> = BTreeMap::new();
    for (d, tag, s) in entries {
        groups.entry((d, tag)).or_default().push(&s);
    }
    groups
        .into_iter()
        .filter_map(|((d, tag), acc)| acc.finish().map(|moments| HierarchyRow { d, tag, moments }))
        .collect()
}

/// Entanglement of each hit, for callers that keep only indices.
pub fn hit_entropies<'a>(pool: &'a CandidatePool, hits: &'a [usize]) -> impl Iterator<Item = f64> + 'a {
    hits.iter().map(move |&i| pool.entropy(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::orient_pair;

    fn sv(p: &[f64]) -> SchmidtVector {
        SchmidtVector::new(p.to_vec()).unwrap()
    }

    fn classic_pair() -> StatePair {
        orient_pair(sv(&[0.4, 0.4, 0.1, 0.1]), sv(&[0.5, 0.25, 0.25, 0.0])).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(catalyst_feasible(&classic_pair()));
        let a = sv(&[0.5, 0.3, 0.2]);
        assert!(catalyst_feasible(&orient_pair(a.clone(), a).unwrap()));
    }

    #[test]
    fn classic_catalyst() {
        let pair = classic_pair();
        let chi = sv(&[0.6, 0.4]);
        assert!(is_catalyst(&pair, &chi, 1).unwrap());
        let mut t = CatalystTester::new(&pair, 1, 2, DEFAULT_MAX_TENSOR_LEN).unwrap();
        assert!(!t.comparable());
        assert!(t.test(&chi));
    }

    #[test]
    fn uniform_and_product_catalysts() {
        let pair = classic_pair();
        for d in 2..=5 {
            let u = SchmidtVector::uniform(d).unwrap();
            assert!(!is_catalyst(&pair, &u, 1).unwrap());
            let p = SchmidtVector::product(d).unwrap();
            assert!(!is_catalyst(&pair, &p, 1).unwrap());
        }
    }

    #[test]
    fn search_finds_the_planted_catalyst() {
        let pair = classic_pair();
        let pool = CandidatePool::from_vectors(&[
            sv(&[0.5, 0.5]),
            sv(&[0.6, 0.4]),
            sv(&[1.0, 0.0]),
        ])
        .unwrap();
        let mut t = CatalystTester::new(&pair, 1, 2, DEFAULT_MAX_TENSOR_LEN).unwrap();
        let hits = t.hits(&pool);
        assert_eq!(hits, vec![1]);
        let s = CatalystSummary::from_entropies(3, hit_entropies(&pool, &hits));
        assert!(s.min_e().unwrap() <= 0.970951);
    }

    #[test]
    fn search_skips_infeasible_pairs() {
        // psi has the larger top coefficient: endpoint condition fails
        let pair = orient_pair(sv(&[0.6, 0.2, 0.2]), sv(&[0.5, 0.5, 0.0])).unwrap();
        assert!(pair.e_psi() > pair.e_phi());
        assert!(!catalyst_feasible(&pair));
        let e = search_catalysts(&pair, 1, 100, 3, RngStream::new(1, 0)).unwrap();
        assert!(e.infeasible);
        assert!(e.found.is_empty());
        assert_eq!(e.mean_e(), None);
    }

    #[test]
    fn search_is_reproducible() {
        let pair = classic_pair();
        let a = search_catalysts(&pair, 1, 300, 4, RngStream::new(3, 9)).unwrap();
        let b = search_catalysts(&pair, 1, 300, 4, RngStream::new(3, 9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.candidates_tested, 300);
        for r in &a.found {
            assert!(!r.chi.is_uniform(1e-9));
            assert!(is_catalyst(&pair, &r.chi, 1).unwrap());
        }
    }

    #[test]
    fn ensemble_moments_examples() {
        let one = CatalystSummary::from_entropies(10, [1.0, 2.0]);
        let m = ensemble_moments([&one]).unwrap();
        assert_eq!(m.contributing, 1);
        assert_eq!(m.mean_avg, 1.5);
        assert_eq!(m.mean_std, 0.0);
        assert_eq!(m.min_avg, 1.0);
        assert_eq!(m.min_std, 0.0);

        let empty = CatalystSummary::new(10);
        assert_eq!(ensemble_moments([&empty]), None);

        let two = CatalystSummary::from_entropies(10, [3.0]);
        let m = ensemble_moments([&one, &empty, &two]).unwrap();
        assert_eq!(m.contributing, 2);
        assert!((m.mean_avg - 2.25).abs() < 1e-15);
        assert!((m.mean_std - 0.75).abs() < 1e-15);
        assert!((m.min_avg - 2.0).abs() < 1e-15);
        assert!((m.min_std - 1.0).abs() < 1e-15);
    }

    #[test]
    fn band_counts() {
        let entries = [
            BandEntry { delta: 0.06, n_found: 10 },
            BandEntry { delta: 0.08, n_found: 0 },
            BandEntry { delta: 0.3, n_found: 7 },
        ];
        assert_eq!(avg_catalyst_count(&entries, (0.05, 0.1)), Some(5.0));
        assert_eq!(avg_catalyst_count(&entries, (0.2, 0.25)), None);
        assert_eq!(
            avg_catalyst_count(&[BandEntry { delta: 0.1, n_found: 0 }], (0.1, 0.15)),
            Some(0.0)
        );
    }

    #[test]
    fn tags_from_copy_counts() {
        assert_eq!(HierarchyTag::from_copies(2, 1).unwrap(), HierarchyTag::OneStep { n: 1 });
        assert_eq!(HierarchyTag::from_copies(3, 2).unwrap(), HierarchyTag::OneStep { n: 2 });
        assert_eq!(HierarchyTag::from_copies(3, 1).unwrap(), HierarchyTag::Strong { m: 3 });
        assert_eq!(HierarchyTag::from_copies(4, 1).unwrap(), HierarchyTag::Strong { m: 4 });
        assert_eq!(
            HierarchyTag::from_copies(2, 2).unwrap(),
            HierarchyTag::GeneralAssisted { m: 2, n: 2 }
        );
        assert!(HierarchyTag::from_copies(1, 2).is_err());
        assert!(HierarchyTag::from_copies(1, 0).is_err());
        assert_eq!(HierarchyTag::Strong { m: 3 }.label(), "chi_3(1)");
        assert_eq!(HierarchyTag::OneStep { n: 2 }.copies(), Some((3, 2)));
    }

    #[test]
    fn assisted_requires_incomparability() {
        let u = SchmidtVector::uniform(4).unwrap();
        let comparable = orient_pair(u, sv(&[0.7, 0.1, 0.1, 0.1])).unwrap();
        let chi = sv(&[0.6, 0.4]);
        assert_eq!(
            classify_assisted(&comparable, &chi, 2, 1, StrongRule::AllCopies).unwrap(),
            None
        );
        let pair = classic_pair();
        let depth_two = classify(&pair, 2).unwrap().is_incomparable();
        let tag = classify_assisted(&pair, &chi, 2, 1, StrongRule::AllCopies).unwrap();
        assert_eq!(tag.is_some(), depth_two);
    }

    #[test]
    fn cost_efficient_examples() {
        let pair = classic_pair();
        let u = SchmidtVector::uniform(2).unwrap();
        assert!(!classify_cost_efficient(&pair, &u).unwrap());
        // a catalyst more entangled than psi fails the cost condition
        let rich = SchmidtVector::uniform(8).unwrap();
        assert!(rich.entropy() > pair.e_psi());
        assert!(!classify_cost_efficient(&pair, &rich).unwrap());
    }

    #[test]
    fn hierarchy_rows_group_by_tag() {
        let tag = HierarchyTag::OneStep { n: 1 };
        let rows = hierarchy_moments([
            (4, tag, CatalystSummary::from_entropies(5, [1.2, 1.4])),
            (4, HierarchyTag::Strong { m: 3 }, CatalystSummary::new(5)),
        ]);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].d, 4);
        assert_eq!(rows[0].tag, tag);
        assert!((rows[0].moments.mean_avg - 1.3).abs() < 1e-15);
        assert_eq!(rows[0].moments.mean_std, 0.0);
        assert_eq!(rows[0].moments.min_avg, 1.2);
    }

    use crate::transform::classify;
}
