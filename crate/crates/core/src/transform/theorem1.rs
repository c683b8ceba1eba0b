//! Extremal qutrit pairs of the entanglement gap measured by `a1 a2 a3`.
//!
//! For a qutrit pair with source spectrum `a` and target spectrum `b`, write
//! `α1 = a1 - b1` and `α2 = (a1 + a2) - (b1 + b2)`. The pair is comparable
//! exactly when `α1 <= 0` and `α2 <= 0`. With the gap
//! `Δ = a1 a2 a3 - b1 b2 b3` viewed as a function of `(α1, α2)`:
//!
//! * for fixed `b`, the only interior extremum is a maximum at
//!   `α1 = (1 - 3 b1) / 3`, `α2 = (3 b3 - 1) / 3`, where both are `<= 0`;
//! * for fixed `a`, the only interior extremum is a minimum at
//!   `α1 = (3 a1 - 1) / 3`, `α2 = (1 - 3 a3) / 3`, where both are `>= 0`.

use crate::error::{Error, Result};
use crate::schmidt::{SchmidtVector, EPS_CLAMP, EPS_CMP, EPS_NORM};

/// Result of an extremal construction: the two partial-sum differences and
/// the reconstructed partner spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub alpha1: f64,
    pub alpha2: f64,
    pub vector: SchmidtVector,
}

fn require_qutrit(v: &SchmidtVector) -> Result<()> {
    if v.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: v.dim(),
        });
    }
    Ok(())
}

/// Source spectrum from a target and `(α1, α2)`.
pub fn source_from_target(b: &[f64], alpha1: f64, alpha2: f64) -> [f64; 3] {
    [b[0] + alpha1, b[1] + alpha2 - alpha1, b[2] - alpha2]
}

/// Target spectrum from a source and `(α1, α2)`.
pub fn target_from_source(a: &[f64], alpha1: f64, alpha2: f64) -> [f64; 3] {
    [a[0] - alpha1, a[1] - alpha2 + alpha1, a[2] + alpha2]
}

/// `a1 a2 a3 - b1 b2 b3`.
pub fn concurrence_gap(a: &[f64], b: &[f64]) -> f64 {
    a[0] * a[1] * a[2] - b[0] * b[1] * b[2]
}

/// The gap as a function of `(α1, α2)` with the target fixed.
pub fn gap_with_target(b: &[f64], alpha1: f64, alpha2: f64) -> f64 {
    concurrence_gap(&source_from_target(b, alpha1, alpha2), b)
}

/// The gap as a function of `(α1, α2)` with the source fixed.
pub fn gap_with_source(a: &[f64], alpha1: f64, alpha2: f64) -> f64 {
    concurrence_gap(a, &target_from_source(a, alpha1, alpha2))
}

/// Rejects constructions outside the ordered probability simplex instead of
/// clamping them.
fn feasible(v: [f64; 3]) -> Result<SchmidtVector> {
    let sum: f64 = v.iter().sum();
    let ordered = v[0] >= v[1] - EPS_CMP && v[1] >= v[2] - EPS_CMP;
    let nonneg = v.iter().all(|&p| p.is_finite() && p >= -EPS_CLAMP);
    if !ordered || !nonneg || (sum - 1.0).abs() > EPS_NORM {
        return Err(Error::InfeasibleConstruction(v.to_vec()));
    }
    SchmidtVector::new(v.to_vec()).map_err(|_| Error::InfeasibleConstruction(v.to_vec()))
}

/// Maximizer of the gap for a fixed target `b`; returns the source spectrum.
pub fn theorem1_max_construct(b: &SchmidtVector) -> Result<Construction> {
    require_qutrit(b)?;
    let alpha1 = (1.0 - 3.0 * b[0]) / 3.0;
    let alpha2 = (3.0 * b[2] - 1.0) / 3.0;
    let vector = feasible(source_from_target(b, alpha1, alpha2))?;
    Ok(Construction {
        alpha1,
        alpha2,
        vector,
    })
}

/// Minimizer of the gap for a fixed source `a`; returns the target spectrum.
pub fn theorem1_min_construct(a: &SchmidtVector) -> Result<Construction> {
    require_qutrit(a)?;
    let alpha1 = (3.0 * a[0] - 1.0) / 3.0;
    let alpha2 = (1.0 - 3.0 * a[2]) / 3.0;
    let vector = feasible(target_from_source(a, alpha1, alpha2))?;
    Ok(Construction {
        alpha1,
        alpha2,
        vector,
    })
}

/// Second derivatives of `f` at `(x, y)` by central differences with step `h`:
/// `[[f_xx, f_xy], [f_xy, f_yy]]`.
pub fn hessian_central<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64, h: f64) -> [[f64; 2]; 2] {
    let f0 = f(x, y);
    let fxx = (f(x + h, y) - 2.0 * f0 + f(x - h, y)) / (h * h);
    let fyy = (f(x, y + h) - 2.0 * f0 + f(x, y - h)) / (h * h);
    let fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
    [[fxx, fxy], [fxy, fyy]]
}
