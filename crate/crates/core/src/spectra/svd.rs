//! One-sided (Hestenes) Jacobi SVD for small dense complex matrices.
//!
//! Column pairs of a working copy of `A` are rotated until they are mutually
//! orthogonal; the column norms are then the singular values and the
//! accumulated rotations form the right singular vectors. The method has
//! high relative accuracy on small singular values, which matters when
//! singular values are compared after taking logarithms.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::spectrum::SingularSpectrum;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 64;

/// Singular values at or below `n * ZERO_FLUSH_REL * scale` are returned as
/// exact zeros, where `scale` is the largest singular value (or a larger
/// caller-supplied scale). The flushed error stays inside the accuracy
/// contract `n * 1e-12 * s_1`.
pub const ZERO_FLUSH_REL: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct Svd {
    /// Nonincreasing singular values.
    pub values: SingularSpectrum,
    /// Right singular vectors, column `j` pairs with `values[j]`; these are
    /// eigenvectors of `|A|`.
    pub v: DMatrix<Complex64>,
}

pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    svd_with_scale(a, 0.0)
}

pub fn singular_values(a: &ComplexMatrix) -> Result<SingularSpectrum> {
    Ok(svd(a)?.values)
}

/// As [`singular_values`], flushing relative to `max(s_1, scale)`.
///
/// Use when `a` was computed from larger factors (e.g. `a = x * y` with
/// `scale = ‖x‖‖y‖`) and its rounding error is relative to that scale.
pub fn singular_values_with_scale(a: &ComplexMatrix, scale: f64) -> Result<SingularSpectrum> {
    Ok(svd_with_scale(a, scale)?.values)
}

fn svd_with_scale(a: &ComplexMatrix, scale: f64) -> Result<Svd> {
    let n = a.dim();
    let m = a.inner();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| m.column(j).iter().copied().collect())
        .collect();
    let mut vcols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    // columns below this squared norm are numerically zero and left alone
    let negligible = (f64::EPSILON * a.frobenius_norm()).powi(2);
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                if rotate(&mut cols, &mut vcols, p, q, negligible) {
                    rotated = true;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }

    let norms: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));
    let top = norms[order[0]].max(scale);
    let cutoff = n as f64 * ZERO_FLUSH_REL * top;
    let values: Vec<f64> = order
        .iter()
        .map(|&j| if norms[j] <= cutoff { 0.0 } else { norms[j] })
        .collect();
    let v = DMatrix::from_fn(n, n, |i, j| vcols[order[j]][i]);
    Ok(Svd {
        values: SingularSpectrum::new(values)?,
        v,
    })
}

fn norm(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonalizes columns `p` and `q`. Returns false if they already were.
fn rotate(
    cols: &mut [Vec<Complex64>],
    vcols: &mut [Vec<Complex64>],
    p: usize,
    q: usize,
    negligible: f64,
) -> bool {
    let (alpha, beta, gamma) = {
        let (cp, cq) = (&cols[p], &cols[q]);
        let mut alpha = 0.0;
        let mut beta = 0.0;
        let mut gamma = Complex64::new(0.0, 0.0);
        for (x, y) in cp.iter().zip(cq) {
            alpha += x.norm_sqr();
            beta += y.norm_sqr();
            gamma += x.conj() * y;
        }
        (alpha, beta, gamma)
    };
    let g = gamma.norm();
    if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
        return false;
    }
    // Rotate (a_p, e^{-iφ} a_q), whose inner product g is real.
    let phase = (gamma / g).conj();
    let zeta = (beta - alpha) / (2.0 * g);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    apply(cols, p, q, phase, c, s);
    apply(vcols, p, q, phase, c, s);
    true
}

fn apply(cols: &mut [Vec<Complex64>], p: usize, q: usize, phase: Complex64, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (cp, cq) = (&mut left[p], &mut right[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let a = *x;
        let b = *y * phase;
        *x = a * c - b * s;
        *y = a * s + b * c;
    }
}

/// Eigenvalues of a Hermitian matrix in nonincreasing order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let scale = h.frobenius_norm().max(1.0);
    if !h.is_hermitian(1e-12 * scale) {
        return Err(Error::InvalidMatrix("matrix is not Hermitian".into()));
    }
    let eig = SymmetricEigen::new(h.inner().clone());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}
