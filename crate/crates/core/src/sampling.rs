//! Haar-random bipartite pure states, reduced to their Schmidt spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::schmidt::{sort_descending, SchmidtVector, EPS_CLAMP};

/// Real and imaginary parts of a `d × d` coefficient matrix, each entry an
/// independent standard normal draw.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSeedMatrix {
    dim: usize,
    real_parts: Vec<f64>,
    imag_parts: Vec<f64>,
}

impl GaussianSeedMatrix {
    /// Draws all real parts (row-major), then all imaginary parts.
    pub fn draw<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, min: 2 });
        }
        let n = dim * dim;
        let real_parts = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let imag_parts = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        Ok(GaussianSeedMatrix {
            dim,
            real_parts,
            imag_parts,
        })
    }

    pub fn from_parts(dim: usize, real_parts: Vec<f64>, imag_parts: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, min: 2 });
        }
        let n = dim * dim;
        for parts in [&real_parts, &imag_parts] {
            if parts.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: parts.len(),
                });
            }
            if let Some(index) = parts.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidEntry {
                    index,
                    value: parts[index],
                });
            }
        }
        Ok(GaussianSeedMatrix {
            dim,
            real_parts,
            imag_parts,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C = A + iB`.
    pub fn coefficients(&self) -> DMatrix<Complex64> {
        let d = self.dim;
        DMatrix::from_fn(d, d, |i, j| {
            Complex64::new(self.real_parts[i * d + j], self.imag_parts[i * d + j])
        })
    }

    /// Sorted, normalized eigenvalues of `C C†`: the squared Schmidt
    /// coefficients of the state `Σ C_ij |i⟩|j⟩ / ‖C‖`.
    pub fn schmidt_spectrum(&self) -> Result<SchmidtVector> {
        let c = self.coefficients();
        let gram = &c * c.adjoint();
        let eig = gram.symmetric_eigenvalues();
        let mut probs: Vec<f64> = eig.iter().copied().collect();
        if probs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericFailure(format!(
                "non-finite eigenvalue in {probs:?}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::NumericFailure(format!(
                "eigenvalues sum to {sum}"
            )));
        }
        for p in probs.iter_mut() {
            *p /= sum;
            if *p < 0.0 {
                if *p < -EPS_CLAMP {
                    return Err(Error::NumericFailure(format!(
                        "negative eigenvalue {p} of a Gram matrix"
                    )));
                }
                *p = 0.0;
            }
        }
        sort_descending(&mut probs);
        SchmidtVector::new(probs)
    }
}

/// Schmidt spectrum of a Haar-random pure state in `d ⊗ d`, drawn with `rng`.
pub fn sample_haar_schmidt_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<SchmidtVector> {
    GaussianSeedMatrix::draw(d, rng)?.schmidt_spectrum()
}

/// Schmidt spectrum of a Haar-random pure state in `d ⊗ d` using the first
/// draws of `stream`.
pub fn sample_haar_schmidt(d: usize, stream: RngStream) -> Result<SchmidtVector> {
    sample_haar_schmidt_with(d, &mut stream.rng())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(
            sample_haar_schmidt(1, RngStream::new(0, 0)),
            Err(Error::InvalidDimension { dim: 1, min: 2 })
        );
    }

    #[test]
    fn qubit_sample_is_valid() {
        let v = sample_haar_schmidt(2, RngStream::new(42, 0)).unwrap();
        assert_eq!(v.dim(), 2);
        assert!(v[0] >= v[1] && v[1] >= 0.0);
        assert!((v[0] + v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_stream_is_reproducible() {
        let a = sample_haar_schmidt(5, RngStream::new(9, 1)).unwrap();
        let b = sample_haar_schmidt(5, RngStream::new(9, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn diagonal_coefficients_give_squared_moduli() {
        // C = diag(3, 4i, 0) has Gram eigenvalues 9, 16, 0
        let re = vec![3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let im = vec![0.0, 0.0, 0.0, 0.0, 4.0, 0.0, 0.0, 0.0, 0.0];
        let m = GaussianSeedMatrix::from_parts(3, re, im).unwrap();
        let v = m.schmidt_spectrum().unwrap();
        assert!((v[0] - 0.64).abs() < 1e-14);
        assert!((v[1] - 0.36).abs() < 1e-14);
        assert!(v[2].abs() < 1e-14);
    }

    #[test]
    fn rank_one_matrix_is_a_product_state() {
        // rows proportional: C = u v^T
        let u = [1.0, 2.0, -1.0];
        let w = [0.5, -1.0, 2.0];
        let re: Vec<f64> = (0..9).map(|k| u[k / 3] * w[k % 3]).collect();
        let m = GaussianSeedMatrix::from_parts(3, re, vec![0.0; 9]).unwrap();
        let v = m.schmidt_spectrum().unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert_eq!(v.entropy() < 1e-10, true);
    }

    #[test]
    fn from_parts_validates() {
        assert!(matches!(
            GaussianSeedMatrix::from_parts(2, vec![0.0; 3], vec![0.0; 4]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            GaussianSeedMatrix::from_parts(2, vec![f64::INFINITY, 0.0, 0.0, 0.0], vec![0.0; 4]),
            Err(Error::InvalidEntry { index: 0, .. })
        ));
        let zero = GaussianSeedMatrix::from_parts(2, vec![0.0; 4], vec![0.0; 4]).unwrap();
        assert!(matches!(
            zero.schmidt_spectrum(),
            Err(Error::NumericFailure(_))
        ));
    }
}
