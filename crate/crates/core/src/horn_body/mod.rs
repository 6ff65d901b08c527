//! The multiplicative Horn body `K(λ, μ)`: the set of singular-value
//! sequences of `diag(λ) U diag(μ)` over unitary `U`.
//!
//! Membership is decided by the Horn-triple inequality system, which
//! describes the body exactly, invertible or not. Members are realized
//! numerically by [`realize`].

mod membership;
mod realize;
mod sample;

pub use membership::{epsilon_shift, membership, membership_invertible, on_boundary, BodySpec};
pub use realize::{realize, RealizationResult, RealizeConfig};
pub use sample::sample_body;
