//! Seeded generators shared by the integration and acceptance tests.

use multhorn::spectra::random::{hermitian, log_uniform_spectrum, with_singular_values};
use multhorn::spectra::{ComplexMatrix, RngSeed, SingularSpectrum};
use multhorn::svf::{Point, StepFunction};
use rand::Rng;

/// Random step function with `1..=max_pieces` pieces. Breakpoints are exact
/// rationals with small denominators or plain reals; the last piece is zero
/// with probability `zero_prob`.
pub fn random_step<R: Rng>(rng: &mut R, max_pieces: usize, zero_prob: f64) -> StepFunction {
    loop {
        let pieces = rng.random_range(1..=max_pieces);
        let mut cuts: Vec<Point> = Vec::new();
        if rng.random_bool(0.5) {
            let q: i64 = rng.random_range(pieces as i64 + 1..=24);
            let mut num: Vec<i64> = (1..q).collect();
            for i in (1..num.len()).rev() {
                num.swap(i, rng.random_range(0..=i));
            }
            let mut chosen: Vec<i64> = num.into_iter().take(pieces - 1).collect();
            chosen.sort();
            cuts.extend(chosen.into_iter().map(|p| Point::ratio(p, q)));
        } else {
            let mut xs: Vec<f64> = (0..pieces - 1)
                .map(|_| rng.random_range(0.02..0.98))
                .collect();
            xs.sort_by(f64::total_cmp);
            cuts.extend(xs.into_iter().map(Point::Real));
        }
        let mut values = log_uniform_spectrum(pieces, 1.5, rng);
        if pieces > 1 && rng.random_bool(zero_prob) {
            *values.last_mut().unwrap() = 0.0;
        }
        let mut b = vec![Point::zero()];
        b.extend(cuts);
        b.push(Point::one());
        // real cuts may collide; draw again
        if let Ok(f) = StepFunction::new(b, values) {
            return f;
        }
    }
}

/// Nonincreasing spectrum; with `zeros > 0` the last `zeros` entries are 0.
pub fn random_spectrum<R: Rng>(rng: &mut R, n: usize, zeros: usize) -> SingularSpectrum {
    let mut v = log_uniform_spectrum(n, 1.5, rng);
    for x in v.iter_mut().rev().take(zeros) {
        *x = 0.0;
    }
    SingularSpectrum::new(v).unwrap()
}

/// Matrix with prescribed singular values and Haar singular vectors.
pub fn matrix_with(s: &SingularSpectrum, seed: RngSeed) -> ComplexMatrix {
    with_singular_values(s.values(), seed)
}

pub fn hermitian_pair(n: usize, seed: RngSeed) -> (ComplexMatrix, ComplexMatrix) {
    (
        hermitian(n, 1.0, seed.derive(0)),
        hermitian(n, 2.5, seed.derive(1)),
    )
}
