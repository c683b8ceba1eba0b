//! Ordered Schmidt spectra of bipartite pure states.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Absolute tolerance on the normalization of a probability vector.
pub const EPS_NORM: f64 = 1e-12;

/// Tolerance used when checking the non-increasing order of stored entries.
pub const EPS_CMP: f64 = 1e-12;

/// Negative entries down to this value are treated as round-off and clamped.
pub const EPS_CLAMP: f64 = 1e-12;

/// A probability vector stored in non-increasing order.
///
/// This is the only state representation the LOCC questions need: two pure
/// states with equal sorted Schmidt coefficients are interconvertible by local
/// unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector {
    probs: Vec<f64>,
}

impl SchmidtVector {
    /// Builds a spectrum from probabilities in any order.
    ///
    /// Entries in `[-EPS_CLAMP, 0)` are clamped to zero; the sum must be 1
    /// within [`EPS_NORM`]. The result is sorted descending with ties kept in
    /// input order.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (index, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -EPS_CLAMP {
                return Err(Error::InvalidEntry { index, value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { sum });
        }
        sort_descending(&mut probs);
        Ok(SchmidtVector { probs })
    }

    /// Normalizes non-negative weights by their sum, then sorts.
    pub fn from_weights(mut weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !sum.is_finite() || sum <= 0.0 {
            return Err(Error::NotNormalized { sum });
        }
        for w in weights.iter_mut() {
            *w /= sum;
        }
        Self::new(weights)
    }

    /// Wraps entries the caller guarantees are valid and sorted.
    pub(crate) fn from_sorted_unchecked(probs: Vec<f64>) -> Self {
        debug_assert!(!probs.is_empty());
        debug_assert!(probs.windows(2).all(|w| w[0] >= w[1] - EPS_CMP));
        SchmidtVector { probs }
    }

    /// The maximally entangled spectrum `(1/d, ..., 1/d)`.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        Ok(SchmidtVector {
            probs: vec![1.0 / dim as f64; dim],
        })
    }

    /// The product-state spectrum `(1, 0, ..., 0)`.
    pub fn product(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        let mut probs = vec![0.0; dim];
        probs[0] = 1.0;
        Ok(SchmidtVector { probs })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.probs
    }

    /// Largest Schmidt coefficient.
    pub fn first(&self) -> f64 {
        self.probs[0]
    }

    /// Smallest Schmidt coefficient.
    pub fn last(&self) -> f64 {
        self.probs[self.probs.len() - 1]
    }

    /// Entanglement entropy in bits, see [`entropy`].
    pub fn entropy(&self) -> f64 {
        entropy(&self.probs)
    }

    /// Whether every entry equals `1/dim` within `tol`.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let u = 1.0 / self.dim() as f64;
        self.probs.iter().all(|p| (p - u).abs() <= tol)
    }
}

impl Deref for SchmidtVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.probs
    }
}

impl fmt::Display for SchmidtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Stable descending sort; equal entries keep their original order.
pub(crate) fn sort_descending(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}

/// Von Neumann entropy `-Σ p log2 p` of a Schmidt spectrum, with `0 log 0 = 0`.
pub fn entropy(probs: &[f64]) -> f64 {
    let s: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    // -0.0 for product states
    s.max(0.0)
}

/// Page-type estimate `log2 M - M / (2K)` of the mean entropy of an
/// `M ⊗ K` random pure state (`M ≤ K`).
pub fn predicted_mean_entropy(m: usize, k: usize) -> f64 {
    (m as f64).log2() - m as f64 / (2.0 * k as f64)
}

/// Product `a1 a2 a3` of a qutrit spectrum: the squared g-concurrence with its
/// constant factor of 4 dropped.
pub fn qutrit_gconcurrence_sq(x: &SchmidtVector) -> Result<f64> {
    if x.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: x.dim(),
        });
    }
    Ok(x[0] * x[1] * x[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_sorts_and_validates() {
        let v = SchmidtVector::new(vec![0.2, 0.5, 0.3]).unwrap();
        assert_eq!(v.probs(), &[0.5, 0.3, 0.2]);
        assert!(matches!(
            SchmidtVector::new(vec![0.5, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            SchmidtVector::new(vec![1.1, -0.1]),
            Err(Error::InvalidEntry { index: 1, .. })
        ));
        assert!(matches!(
            SchmidtVector::new(vec![f64::NAN, 1.0]),
            Err(Error::InvalidEntry { index: 0, .. })
        ));
        assert_eq!(SchmidtVector::new(vec![]), Err(Error::Empty));
    }

    #[test]
    fn tiny_negative_entries_are_clamped() {
        let v = SchmidtVector::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(v.last(), 0.0);
    }

    #[test]
    fn entropy_examples() {
        let product = SchmidtVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(product.entropy(), 0.0);
        let max = SchmidtVector::uniform(4).unwrap();
        assert!((max.entropy() - 2.0).abs() < 1e-15);
        // -0.6 log2 0.6 - 0.4 log2 0.4
        let v = SchmidtVector::new(vec![0.6, 0.4]).unwrap();
        assert!((v.entropy() - 0.970_950_594_454_668_5).abs() < 1e-12);
    }

    #[test]
    fn predicted_mean_entropy_examples() {
        assert_eq!(predicted_mean_entropy(4, 4), 1.5);
        assert_eq!(predicted_mean_entropy(8, 8), 2.5);
        assert_eq!(predicted_mean_entropy(2, 2), 0.5);
    }

    #[test]
    fn gconcurrence_examples() {
        let p = SchmidtVector::product(3).unwrap();
        assert_eq!(qutrit_gconcurrence_sq(&p).unwrap(), 0.0);
        let u = SchmidtVector::uniform(3).unwrap();
        assert!((qutrit_gconcurrence_sq(&u).unwrap() - 1.0 / 27.0).abs() < 1e-15);
        let v = SchmidtVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        assert!((qutrit_gconcurrence_sq(&v).unwrap() - 0.03).abs() < 1e-15);
        let w = SchmidtVector::uniform(4).unwrap();
        assert_eq!(
            qutrit_gconcurrence_sq(&w),
            Err(Error::WrongDimension {
                expected: 3,
                found: 4
            })
        );
    }
}
