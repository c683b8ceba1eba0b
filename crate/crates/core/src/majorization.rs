//! Majorization and tensor products of Schmidt spectra.
//!
//! `x ≺ y` ("x is majorized by y") holds when every prefix sum of the
//! descending entries of `x` is at most the matching prefix sum of `y`. For
//! Schmidt spectra this is exactly the condition under which the state with
//! spectrum `x` can be turned into the state with spectrum `y` by LOCC.

use crate::error::{Error, Result};
use crate::schmidt::{sort_descending, SchmidtVector};

/// Absolute tolerance on prefix-sum comparisons.
pub const EPS_MAJOR: f64 = 1e-10;

/// Default cap on the length of any materialized tensor product.
pub const DEFAULT_MAX_TENSOR_LEN: usize = 10_000_000;

/// `x ≺ y` on descending-sorted slices. The shorter slice is padded with zeros.
pub fn majorized_by(x: &[f64], y: &[f64]) -> bool {
    let n = x.len().max(y.len());
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..n {
        sx += x.get(i).copied().unwrap_or(0.0);
        sy += y.get(i).copied().unwrap_or(0.0);
        if sx > sy + EPS_MAJOR {
            return false;
        }
    }
    true
}

fn checked_len(a: usize, b: usize, max: usize) -> Result<usize> {
    let len = a as u128 * b as u128;
    if len > max as u128 {
        return Err(Error::TensorTooLarge { len, max });
    }
    Ok(len as usize)
}

/// All pairwise products `x_i y_j`, sorted descending.
pub fn tensor_product(x: &SchmidtVector, y: &SchmidtVector) -> Result<SchmidtVector> {
    tensor_product_bounded(x, y, DEFAULT_MAX_TENSOR_LEN)
}

pub fn tensor_product_bounded(
    x: &SchmidtVector,
    y: &SchmidtVector,
    max_len: usize,
) -> Result<SchmidtVector> {
    let len = checked_len(x.dim(), y.dim(), max_len)?;
    let mut out = Vec::with_capacity(len);
    for &a in x.iter() {
        out.extend(y.iter().map(|&b| a * b));
    }
    sort_descending(&mut out);
    Ok(SchmidtVector::from_sorted_unchecked(out))
}

/// `x^{⊗k}`; `k = 1` returns a copy of `x`.
pub fn tensor_power(x: &SchmidtVector, k: u32) -> Result<SchmidtVector> {
    tensor_power_bounded(x, k, DEFAULT_MAX_TENSOR_LEN)
}

pub fn tensor_power_bounded(x: &SchmidtVector, k: u32, max_len: usize) -> Result<SchmidtVector> {
    if k == 0 {
        return Err(Error::ZeroCopies);
    }
    let len = (x.dim() as u128).checked_pow(k).unwrap_or(u128::MAX);
    if len > max_len as u128 {
        return Err(Error::TensorTooLarge { len, max: max_len });
    }
    let mut acc = x.clone();
    for _ in 1..k {
        acc = tensor_product_bounded(&acc, x, max_len)?;
    }
    Ok(acc)
}

/// Reusable cursor storage for [`tensor_majorized_by`].
#[derive(Debug, Default, Clone)]
pub struct MergeScratch {
    x: Vec<usize>,
    y: Vec<usize>,
}

/// Yields the entries of `base ⊗ factor` in descending order without
/// materializing or sorting them. Both inputs must be sorted descending.
///
/// Row `j` of the product table is `base * factor[j]` and is itself sorted,
/// so a `factor.len()`-way merge produces the sorted product.
struct ProductMerge<'a> {
    base: &'a [f64],
    factor: &'a [f64],
    cursors: &'a mut Vec<usize>,
}

impl<'a> ProductMerge<'a> {
    fn new(base: &'a [f64], factor: &'a [f64], cursors: &'a mut Vec<usize>) -> Self {
        cursors.clear();
        cursors.resize(factor.len(), 0);
        ProductMerge {
            base,
            factor,
            cursors,
        }
    }

    #[inline]
    fn next(&mut self) -> Option<f64> {
        let mut best = None;
        let mut best_val = f64::NEG_INFINITY;
        for (j, &c) in self.factor.iter().enumerate() {
            let pos = self.cursors[j];
            if pos < self.base.len() {
                let v = self.base[pos] * c;
                if v > best_val {
                    best_val = v;
                    best = Some(j);
                }
            }
        }
        let j = best?;
        self.cursors[j] += 1;
        Some(best_val)
    }
}

/// Decides `x ⊗ c ≺ y ⊗ c` by merging the two product tables lazily and
/// stopping at the first violated prefix sum.
///
/// Equivalent to `majorized_by(tensor_product(x, c), tensor_product(y, c))`
/// up to floating-point summation order. All three slices must be sorted
/// descending.
pub fn tensor_majorized_by(x: &[f64], y: &[f64], c: &[f64], scratch: &mut MergeScratch) -> bool {
    // zero rows of the factor contribute only trailing zeros
    let nz = c.iter().take_while(|&&v| v > 0.0).count();
    let c = &c[..nz];
    let mut mx = ProductMerge::new(x, c, &mut scratch.x);
    let mut my = ProductMerge::new(y, c, &mut scratch.y);
    let (mut sx, mut sy) = (0.0, 0.0);
    loop {
        let a = mx.next();
        let b = my.next();
        if a.is_none() && b.is_none() {
            return true;
        }
        sx += a.unwrap_or(0.0);
        sy += b.unwrap_or(0.0);
        if sx > sy + EPS_MAJOR {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(p: &[f64]) -> SchmidtVector {
        SchmidtVector::new(p.to_vec()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-15, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn majorization_examples() {
        // prefix sums 0.4 <= 0.5, 0.75 <= 0.8, 1 <= 1
        assert!(majorized_by(&sv(&[0.4, 0.35, 0.25]), &sv(&[0.5, 0.3, 0.2])));
        // second prefix 0.8 > 0.75
        assert!(!majorized_by(
            &sv(&[0.4, 0.4, 0.1, 0.1]),
            &sv(&[0.5, 0.25, 0.25, 0.0])
        ));
        let u = SchmidtVector::uniform(4).unwrap();
        assert!(majorized_by(&u, &sv(&[0.7, 0.1, 0.1, 0.1])));
        assert!(majorized_by(&u, &SchmidtVector::product(4).unwrap()));
    }

    #[test]
    fn majorization_pads_shorter_vector() {
        assert!(majorized_by(&[0.5, 0.5], &[0.6, 0.3, 0.1]) == false);
        assert!(majorized_by(&[0.4, 0.3, 0.3], &[0.6, 0.4]));
    }

    #[test]
    fn tensor_product_examples() {
        let t = tensor_product(&sv(&[0.6, 0.4]), &sv(&[1.0, 0.0])).unwrap();
        assert_close(&t, &[0.6, 0.4, 0.0, 0.0]);
        let h = sv(&[0.5, 0.5]);
        assert_close(&tensor_product(&h, &h).unwrap(), &[0.25; 4]);
        // enumerate and sort the 8 products by hand
        let t = tensor_product(&sv(&[0.4, 0.4, 0.1, 0.1]), &sv(&[0.6, 0.4])).unwrap();
        assert_close(&t, &[0.24, 0.24, 0.16, 0.16, 0.06, 0.06, 0.04, 0.04]);
    }

    #[test]
    fn tensor_power_examples() {
        let x = sv(&[0.7, 0.2, 0.1]);
        assert_eq!(tensor_power(&x, 1).unwrap(), x);
        assert_close(&tensor_power(&sv(&[0.5, 0.5]), 2).unwrap(), &[0.25; 4]);
        // 0.7^3, 3 x 0.7^2 0.3, 3 x 0.7 0.3^2, 0.3^3
        let t = tensor_power(&sv(&[0.7, 0.3]), 3).unwrap();
        assert_close(
            &t,
            &[0.343, 0.147, 0.147, 0.147, 0.063, 0.063, 0.063, 0.027],
        );
        assert_eq!(tensor_power(&x, 0), Err(Error::ZeroCopies));
    }

    #[test]
    fn overflow_guard() {
        let x = SchmidtVector::uniform(10).unwrap();
        assert!(matches!(
            tensor_power_bounded(&x, 3, 999),
            Err(Error::TensorTooLarge { len: 1000, max: 999 })
        ));
        assert!(tensor_power_bounded(&x, 3, 1000).is_ok());
        assert!(matches!(
            tensor_product_bounded(&x, &x, 99),
            Err(Error::TensorTooLarge { len: 100, .. })
        ));
        let big = SchmidtVector::uniform(1000).unwrap();
        assert!(matches!(
            tensor_power(&big, 40),
            Err(Error::TensorTooLarge { .. })
        ));
    }

    #[test]
    fn lazy_merge_matches_known_catalyst() {
        let x = sv(&[0.4, 0.4, 0.1, 0.1]);
        let y = sv(&[0.5, 0.25, 0.25, 0.0]);
        let c = sv(&[0.6, 0.4]);
        let mut scratch = MergeScratch::default();
        assert!(tensor_majorized_by(&x, &y, &c, &mut scratch));
        assert!(!tensor_majorized_by(&x, &y, &[1.0], &mut scratch));
        assert!(!tensor_majorized_by(&x, &y, &[0.5, 0.5], &mut scratch));
    }
}
