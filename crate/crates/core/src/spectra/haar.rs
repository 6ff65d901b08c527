use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::seed::RngSeed;

/// Haar-distributed `n × n` unitary.
///
/// QR of a complex Ginibre matrix with the phases of `R`'s diagonal moved
/// into `Q`, which makes the distribution exactly Haar.
pub fn haar_unitary(n: usize, seed: RngSeed) -> ComplexMatrix {
    haar_unitary_from(n, &mut seed.rng())
}

pub fn haar_unitary_from<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "unitary dimension must be positive");
    let g = gaussian_matrix(n, rng);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_dmatrix(q).expect("QR factor is square and finite")
}

/// Entries i.i.d. with real and imaginary parts `N(0, 1/2)`.
pub(crate) fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    })
}
