use thiserror::Error;

use crate::report::MembershipReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid index subset: {0}")]
    InvalidSubset(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid step function: {0}")]
    InvalidStepFunction(String),

    #[error("n = {n} is outside the supported range 1..={max}")]
    Capacity { n: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("SVD did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("target is not a member of the body (worst slack {})", .0.worst_slack)]
    NotMember(Box<MembershipReport>),

    #[error("catalog file error: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the floating-point machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Numerical(_))
    }
}
