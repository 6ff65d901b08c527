//! Dense complex matrix numerics: singular values, Haar unitaries and the
//! matrix-level inequalities for singular values of products.

mod compression;
mod haar;
mod matrix;
mod product;
pub mod random;
mod seed;
mod spectrum;
mod svd;

pub use compression::{schubert_compression_check, CompressionOutcome};
pub use haar::{haar_unitary, haar_unitary_from};
pub use matrix::ComplexMatrix;
pub use product::{multiplicative_records, product_inequality_check, product_spectrum};
pub use seed::RngSeed;
pub use spectrum::SingularSpectrum;
pub use svd::{
    hermitian_eigenvalues, singular_values, singular_values_with_scale, svd, Svd, MAX_SWEEPS,
    ZERO_FLUSH_REL,
};
