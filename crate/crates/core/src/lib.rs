//! Singular values of products of operators.
//!
//! The crate covers four layers:
//!
//! * [`combinatorics`]: index subsets, Littlewood–Richardson coefficients and
//!   the catalog of Horn triples `H(n, r)` with coefficient one.
//! * [`spectra`]: dense complex matrices, a one-sided Jacobi SVD, Haar
//!   unitaries and the matrix-level product inequalities.
//! * [`horn_body`]: membership in the multiplicative Horn body
//!   `K(λ, μ)` and numerical realization of its members.
//! * [`svf`]: singular-value step functions on `[0, 1]`, the interval sets
//!   `F_I` and the inequality system for finite von Neumann algebras.
//!
//! The [`cli`] module backs the `multhorn` binary.

pub mod cli;
pub mod combinatorics;
mod error;
pub mod ext;
pub mod horn_body;
pub mod report;
pub mod spectra;
pub mod svf;

pub use error::{Error, Result};
pub use ext::ExtReal;
pub use report::{InequalityKind, InequalityRecord, MembershipReport, Verdict};
