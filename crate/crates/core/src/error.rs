use alloc::string::String;

/// Errors raised by state construction, measures and bound evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("state is not normalized (squared norm {norm_sq})")]
    Normalization { norm_sq: f64 },

    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(String),

    #[error("matrix is not Hermitian (max defect {defect:e})")]
    Hermiticity { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    Positivity { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    Trace { trace: f64 },

    #[error("size error: {0}")]
    Size(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("argument {value} outside domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },

    #[error("bound precondition not met: {0}")]
    Precondition(String),

    #[error("unsupported state class: {0}")]
    UnsupportedStateClass(String),
}

pub type Result<T> = core::result::Result<T, Error>;
