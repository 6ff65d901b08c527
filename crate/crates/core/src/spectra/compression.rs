//! Compressions of a matrix to a subspace in Schubert position with respect
//! to an eigenvector flag of `|A|`.
//!
//! With `v_1, ..., v_n` orthonormal eigenvectors of `|A|` for
//! `s_1(A) >= ... >= s_n(A)`, the subspace `V = span{v_i : i ∈ I}` meets the
//! flag `E_k = span{v_1..v_k}` in dimension at least `ℓ` at `E_{i(ℓ)}`. For
//! any partial isometry `W` carrying an `r`-dimensional `Q ⊇ A(V)` onto `V`,
//! `s_ℓ(WAP) >= s_{i(ℓ)}(A)`, hence `|det_P(WAP)| >= Π s_{i(ℓ)}(A)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::haar::haar_unitary_from;
use super::matrix::ComplexMatrix;
use super::seed::RngSeed;
use super::svd::{singular_values, svd};
use crate::combinatorics::IndexSubset;
use crate::error::{Error, Result};

const RANDOM_FILL_ATTEMPTS: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct CompressionOutcome {
    /// `s_{i(ℓ)}(A)`, `ℓ = 1..r`.
    pub selected: Vec<f64>,
    /// Singular values of the `r × r` compression.
    pub compression: Vec<f64>,
    /// `s_ℓ(compression) - s_{i(ℓ)}(A)`.
    pub value_margins: Vec<f64>,
    /// `(|det compression| - Π s_{i(ℓ)}(A)) / ‖A‖^{r-1}`, in units of `‖A‖`.
    pub det_margin: f64,
    /// Smallest of all margins.
    pub min_margin: f64,
    pub norm: f64,
}

impl CompressionOutcome {
    pub fn passes(&self, tol: f64) -> bool {
        self.min_margin >= -tol
    }
}

/// Builds the compression of `a` to `V = span{v_i : i ∈ subset}` and measures
/// how far its singular values and determinant sit above the bounds.
///
/// The seed randomizes the choice of the partial isometry: the orthonormal
/// basis of the target subspace, and its completion when `A(V)` has
/// dimension below `r`.
pub fn schubert_compression_check(
    a: &ComplexMatrix,
    subset: &IndexSubset,
    seed: RngSeed,
) -> Result<CompressionOutcome> {
    let n = a.dim();
    if subset.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: subset.n(),
        });
    }
    let r = subset.len();
    if r == 0 {
        return Err(Error::InvalidSubset(
            "compression needs a nonempty subset".into(),
        ));
    }
    let dec = svd(a)?;
    let norm = dec.values.largest();
    let selected: Vec<f64> = subset.select(dec.values.values()).collect();

    // Y: orthonormal basis of V, columns v_{i(1)}, ..., v_{i(r)}
    let y = DMatrix::from_fn(n, r, |row, l| dec.v[(row, subset.elements()[l] - 1)]);
    let ay = a.inner() * &y;

    let mut rng = seed.rng();
    let z = orthonormal_span(&ay, norm, &mut rng)?;
    // any unitary change of basis inside Q gives another admissible W
    let rot = haar_unitary_from(r, &mut rng).into_inner();
    let z = z * rot;

    let comp = z.adjoint() * &ay;
    let comp = ComplexMatrix::from_dmatrix(comp)?;
    let compression = singular_values(&comp)?.into_vec();
    let det = comp.inner().clone().determinant().norm();

    let value_margins: Vec<f64> = compression
        .iter()
        .zip(&selected)
        .map(|(c, s)| c - s)
        .collect();
    let bound: f64 = selected.iter().product();
    let det_margin = if norm > 0.0 {
        (det - bound) / norm.powi(r as i32 - 1)
    } else {
        0.0
    };
    let min_margin = value_margins.iter().copied().fold(det_margin, f64::min);
    Ok(CompressionOutcome {
        selected,
        compression,
        value_margins,
        det_margin,
        min_margin,
        norm,
    })
}

/// Orthonormal `n × r` basis of an `r`-dimensional subspace containing the
/// column span of `m`. Dependent columns are replaced by random directions.
fn orthonormal_span<R: Rng + ?Sized>(
    m: &DMatrix<Complex64>,
    scale: f64,
    rng: &mut R,
) -> Result<DMatrix<Complex64>> {
    let (n, r) = m.shape();
    let threshold = 1e-10 * scale.max(f64::MIN_POSITIVE);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    let mut pending: Vec<Vec<Complex64>> = (0..r)
        .map(|j| m.column(j).iter().copied().collect())
        .collect();
    pending.reverse();
    let mut fill_attempts = 0;
    while basis.len() < r {
        let (cand, random) = match pending.pop() {
            Some(c) => (c, false),
            None => {
                fill_attempts += 1;
                if fill_attempts > RANDOM_FILL_ATTEMPTS * r {
                    return Err(Error::Numerical(
                        "orthonormalization did not complete".into(),
                    ));
                }
                let v: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect();
                (v, true)
            }
        };
        let before = vec_norm(&cand);
        let mut v = cand;
        // two passes of Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let ip: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= ip * bi;
                }
            }
        }
        let after = vec_norm(&v);
        let keep = if random {
            after > 1e-8 * before
        } else {
            after > threshold
        };
        if keep {
            basis.push(v.into_iter().map(|x| x / after).collect());
        }
    }
    Ok(DMatrix::from_fn(n, r, |i, j| basis[j][i]))
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
