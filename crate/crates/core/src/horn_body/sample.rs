use rayon::prelude::*;

use super::membership::BodySpec;
use crate::error::{Error, Result};
use crate::spectra::{haar_unitary, product_spectrum, RngSeed, SingularSpectrum};

/// `count` spectra `s(diag(λ) U_i diag(μ))` for independent Haar `U_i`.
///
/// Sample `i` uses the seed `seed.derive(i)`, so the output does not depend
/// on the thread count.
pub fn sample_body(spec: &BodySpec, count: usize, seed: RngSeed) -> Result<Vec<SingularSpectrum>> {
    if count == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let u = haar_unitary(spec.n(), seed.derive(i as u64));
            product_spectrum(spec.lam(), spec.mu(), &u)
        })
        .collect()
}
