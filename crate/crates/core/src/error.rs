use thiserror::Error;

/// Errors produced by fitting, selection and simulation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("column {0} is constant and cannot be standardized")]
    ConstantColumn(usize),

    #[error("design restricted to {columns} column(s) is rank deficient")]
    RankDeficient { columns: usize },

    /// Carries the last iterate so callers can inspect or reuse it.
    #[error("coordinate descent did not converge in {iterations} sweeps at lambda = {lambda} (last change {last_change:e})")]
    NotConverged {
        lambda: f64,
        iterations: usize,
        last_change: f64,
        last_iterate: Vec<f64>,
    },

    #[error("fit failed at lambda = {lambda}: {source}")]
    AtLambda {
        lambda: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("selection failed: {0}")]
    SelectionFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
