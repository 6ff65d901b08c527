//! Singular-value functions on `[0, 1]` restricted to step data: the
//! finite-von-Neumann-algebra counterpart of the matrix inequalities.
//!
//! Interval sets have rational endpoints, so `F_I` measures are exact.
//! Breakpoints supplied as reals are compared with tolerance
//! [`ENDPOINT_TOL`].

mod interval;
mod ops;
mod point;
mod step;

pub use interval::{complement_set, interval_set, IntervalSet};
pub use ops::{
    discretize, fk_determinant, log_integral, matrix_model, spectrum_to_step, vn_inequality_check,
    vn_membership, MatrixModel,
};
pub use point::{Length, Point, ENDPOINT_TOL};
pub use step::StepFunction;
