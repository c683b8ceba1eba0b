//! Mergeable running moments, fixed-edge histograms and rank correlation.

use crate::error::{Error, Result};

/// Streaming mean and sum of squared deviations (Welford), mergeable with
/// Chan's pairwise update.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunningMoments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_slice(values: &[f64]) -> Self {
        let mut m = Self::new();
        for &v in values {
            m.push(v);
        }
        m
    }

    pub fn push(&mut self, value: f64) {
        self.n += 1;
        let delta = value - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (value - self.mean);
    }

    pub fn merge(&self, other: &RunningMoments) -> RunningMoments {
        if other.n == 0 {
            return *self;
        }
        if self.n == 0 {
            return *other;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb, nf) = (self.n as f64, other.n as f64, n as f64);
        RunningMoments {
            n,
            mean: self.mean + delta * nb / nf,
            m2: self.m2 + other.m2 + delta * delta * na * nb / nf,
        }
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mean(&self) -> Option<f64> {
        (self.n > 0).then_some(self.mean)
    }

    /// Population standard deviation `sqrt(m2 / n)`.
    pub fn std(&self) -> Option<f64> {
        (self.n > 0).then(|| (self.m2 / self.n as f64).max(0.0).sqrt())
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }
}

/// Counts over half-open bins `[edge_i, edge_{i+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
    out_of_range: u64,
}

impl Histogram {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::InvalidBins("need at least two edges".into()));
        }
        if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBins(
                "edges must be finite and strictly ascending".into(),
            ));
        }
        let counts = vec![0; edges.len() - 1];
        Ok(Histogram {
            edges,
            counts,
            out_of_range: 0,
        })
    }

    /// Equal-width bins from `lo` covering `hi`; the last bin may extend past `hi`.
    pub fn with_width(lo: f64, hi: f64, width: f64) -> Result<Self> {
        Self::new(uniform_edges(lo, hi, width)?)
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn out_of_range(&self) -> u64 {
        self.out_of_range
    }

    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bin_of(&self, value: f64) -> Option<usize> {
        bin_index(&self.edges, value)
    }

    /// Increments the bin containing `value`, or the out-of-range counter.
    /// Returns the bin index.
    pub fn add(&mut self, value: f64) -> Result<Option<usize>> {
        if value.is_nan() {
            return Err(Error::NanValue);
        }
        match self.bin_of(value) {
            Some(i) => {
                self.counts[i] += 1;
                Ok(Some(i))
            }
            None => {
                self.out_of_range += 1;
                Ok(None)
            }
        }
    }

    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::EdgeMismatch);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.out_of_range += other.out_of_range;
        Ok(())
    }

    /// Per-bin `self / denominator`; `None` where the denominator bin is empty.
    pub fn ratios(&self, denominator: &Histogram) -> Result<Vec<Option<f64>>> {
        if self.edges != denominator.edges {
            return Err(Error::EdgeMismatch);
        }
        Ok(self
            .counts
            .iter()
            .zip(&denominator.counts)
            .map(|(&a, &b)| (b > 0).then(|| a as f64 / b as f64))
            .collect())
    }
}

/// Edges `lo, lo + w, ...` up to the first edge `>= hi`.
pub fn uniform_edges(lo: f64, hi: f64, width: f64) -> Result<Vec<f64>> {
    if !(width > 0.0) || !lo.is_finite() || !hi.is_finite() || hi <= lo {
        return Err(Error::InvalidBins(format!(
            "range [{lo}, {hi}) with width {width}"
        )));
    }
    let n = ((hi - lo) / width - 1e-9).ceil().max(1.0) as usize;
    Ok((0..=n).map(|i| lo + i as f64 * width).collect())
}

/// Index `i` with `edges[i] <= value < edges[i + 1]`.
pub fn bin_index(edges: &[f64], value: f64) -> Option<usize> {
    if edges.len() < 2 || !(value >= edges[0]) || value >= edges[edges.len() - 1] {
        return None;
    }
    // first edge strictly greater than value
    let upper = edges.partition_point(|&e| e <= value);
    Some(upper - 1)
}

/// Running moments per histogram bin.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedMoments {
    edges: Vec<f64>,
    cells: Vec<RunningMoments>,
}

impl BinnedMoments {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        let h = Histogram::new(edges)?;
        let cells = vec![RunningMoments::new(); h.n_bins()];
        Ok(BinnedMoments {
            edges: h.edges,
            cells,
        })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn cells(&self) -> &[RunningMoments] {
        &self.cells
    }

    /// Adds `value` to the bin of `key`; keys outside the edges are dropped.
    pub fn add(&mut self, key: f64, value: f64) -> Result<bool> {
        if key.is_nan() || value.is_nan() {
            return Err(Error::NanValue);
        }
        match bin_index(&self.edges, key) {
            Some(i) => {
                self.cells[i].push(value);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    pub fn merge(&mut self, other: &BinnedMoments) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::EdgeMismatch);
        }
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            *a = a.merge(b);
        }
        Ok(())
    }
}

/// Ranks starting at 1, ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation; `None` for fewer than two points or a constant input.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    pearson(&rx, &ry)
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn two_pass(values: &[f64]) -> (f64, f64) {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        (mean, var.sqrt())
    }

    #[test]
    fn hist_add_examples() {
        let mut h = Histogram::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(h.add(0.5).unwrap(), Some(0));
        assert_eq!(h.counts(), &[1, 0]);
        assert_eq!(h.add(2.0).unwrap(), None);
        assert_eq!(h.out_of_range(), 1);
        assert_eq!(h.add(-0.1).unwrap(), None);
        assert_eq!(h.add(1.0).unwrap(), Some(1));
        assert_eq!(h.add(f64::NAN), Err(Error::NanValue));
        assert_eq!(h.total(), 2);
    }

    #[test]
    fn uniform_draws_fill_bins_evenly() {
        // binomial(10^4, 1/2): mean 5000, sd 50
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut h = Histogram::new(vec![0.0, 1.0, 2.0]).unwrap();
        for _ in 0..10_000 {
            h.add(rng.random_range(0.0..2.0)).unwrap();
        }
        for &c in h.counts() {
            assert!((c as f64 - 5000.0).abs() <= 150.0, "{c}");
        }
    }

    #[test]
    fn hist_normalize_examples() {
        let mut num = Histogram::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let mut den = num.clone();
        for v in [0.1, 0.2, 1.5] {
            den.add(v).unwrap();
        }
        assert_eq!(den.ratios(&den).unwrap(), vec![Some(1.0), Some(1.0), None]);
        num.add(0.1).unwrap();
        let r = num.ratios(&den).unwrap();
        assert_eq!(r, vec![Some(0.5), Some(0.0), None]);
        let other = Histogram::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(num.ratios(&other), Err(Error::EdgeMismatch));
    }

    #[test]
    fn complementary_ratios_sum_to_one() {
        let mut inc = Histogram::with_width(0.0, 1.0, 0.1).unwrap();
        let mut comp = inc.clone();
        let mut all = inc.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let v: f64 = rng.random_range(0.0..1.0);
            all.add(v).unwrap();
            if rng.random_bool(v) {
                comp.add(v).unwrap();
            } else {
                inc.add(v).unwrap();
            }
        }
        let fi = inc.ratios(&all).unwrap();
        let fc = comp.ratios(&all).unwrap();
        for (a, b) in fi.iter().zip(&fc) {
            if let (Some(a), Some(b)) = (a, b) {
                assert!((a + b - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn uniform_edges_cover_range() {
        let e = uniform_edges(0.0, 1.0, 0.25).unwrap();
        assert_eq!(e, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let e = uniform_edges(0.0, 1.1, 0.25).unwrap();
        assert_eq!(e.len(), 6);
        assert!(uniform_edges(0.0, 1.0, 0.0).is_err());
        assert!(Histogram::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn moments_merge_examples() {
        let a = RunningMoments::from_slice(&[1.0, 2.0, 4.0]);
        let empty = RunningMoments::new();
        assert_eq!(a.merge(&empty), a);
        assert_eq!(empty.merge(&a), a);
        assert_eq!(empty.mean(), None);

        let b = RunningMoments::from_slice(&[-3.0, 0.5]);
        let ab = a.merge(&b);
        let ba = b.merge(&a);
        assert!((ab.mean().unwrap() - ba.mean().unwrap()).abs() < 1e-12);
        assert!((ab.std().unwrap() - ba.std().unwrap()).abs() < 1e-12);

        let (m, s) = two_pass(&[1.0, 2.0, 4.0, -3.0, 0.5]);
        assert!((ab.mean().unwrap() - m).abs() < 1e-12);
        assert!((ab.std().unwrap() - s).abs() < 1e-12);
    }

    #[test]
    fn single_value_has_zero_spread() {
        let m = RunningMoments::from_slice(&[1.25]);
        assert_eq!(m.mean(), Some(1.25));
        assert_eq!(m.std(), Some(0.0));
    }

    #[test]
    fn spearman_basics() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(spearman(&x, &[10.0, 20.0, 25.0, 100.0]), Some(1.0));
        assert_eq!(spearman(&x, &[4.0, 3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman(&x, &[1.0, 1.0, 1.0, 1.0]), None);
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0]), vec![2.5, 1.0, 2.5]);
    }

    #[test]
    fn binned_moments() {
        let mut b = BinnedMoments::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert!(b.add(0.5, 3.0).unwrap());
        assert!(b.add(0.7, 5.0).unwrap());
        assert!(!b.add(2.5, 1.0).unwrap());
        assert_eq!(b.cells()[0].mean(), Some(4.0));
        assert!(b.cells()[1].is_empty());
    }
}
