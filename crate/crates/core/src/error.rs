use thiserror::Error;

use crate::model::FrequencyLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside the region where the model is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("basis size {size} is too small (need at least {min})")]
    BasisTooSmall { size: usize, min: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular to working precision")]
    Singular,

    /// Shifted QR ran out of iterations on the active block `lo..=hi`.
    #[error("QR iteration did not converge for block {lo}..={hi} after {iterations} sweeps")]
    NoConvergence { lo: usize, hi: usize, iterations: usize },

    #[error("frequency choice {0} has no closed-form energy")]
    NoClosedForm(FrequencyLabel),

    #[error("frequency {label} rejected: {reason}")]
    Rejected { label: FrequencyLabel, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
