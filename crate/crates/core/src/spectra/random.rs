//! Seeded random matrices for Monte-Carlo checks.

use rand::Rng;

use super::haar::{gaussian_matrix, haar_unitary_from};
use super::matrix::ComplexMatrix;
use super::seed::RngSeed;

/// Complex Ginibre matrix (i.i.d. standard complex Gaussian entries).
pub fn ginibre(n: usize, seed: RngSeed) -> ComplexMatrix {
    ComplexMatrix::from_dmatrix(gaussian_matrix(n, &mut seed.rng())).expect("square and finite")
}

/// `U diag(s) V` with independent Haar `U`, `V`. Zeros in `s` give exact
/// rank deficiency by construction.
pub fn with_singular_values(s: &[f64], seed: RngSeed) -> ComplexMatrix {
    let mut rng = seed.rng();
    let n = s.len();
    let u = haar_unitary_from(n, &mut rng);
    let v = haar_unitary_from(n, &mut rng);
    &(&u * &ComplexMatrix::diag(s)) * &v
}

/// Hermitian matrix `(G + G*) / 2` with `G` Ginibre, times `scale`.
pub fn hermitian(n: usize, scale: f64, seed: RngSeed) -> ComplexMatrix {
    let g = gaussian_matrix(n, &mut seed.rng());
    let h = (&g + g.adjoint()) * num_complex::Complex64::new(0.5 * scale, 0.0);
    ComplexMatrix::from_dmatrix(h).expect("square and finite")
}

/// Nonincreasing vector with entries `exp(u)`, `u` uniform on `[-spread, spread]`.
pub fn log_uniform_spectrum<R: Rng + ?Sized>(n: usize, spread: f64, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| rng.random_range(-spread..=spread).exp())
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}
