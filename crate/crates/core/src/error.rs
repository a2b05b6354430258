use thiserror::Error;

/// Errors raised by the projector-detection toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight mismatch: {left} has weight {left_weight}, {right} has weight {right_weight}")]
    WeightMismatch {
        left: String,
        left_weight: usize,
        right: String,
        right_weight: usize,
    },

    #[error("invalid partition `{0}`")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exactness guarantee was violated. Signals a bug in the character code.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("{what} is limited to {limit}, got {got}")]
    Capability {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("register of {t} bits cannot hold eigenvalues up to {chi_max} in magnitude")]
    RegisterTooSmall { t: u32, chi_max: u64 },

    #[error("measured signature {signature:?} does not belong to {kind}")]
    NotAProjector {
        kind: &'static str,
        signature: Vec<String>,
    },

    #[error("zero-norm vector cannot be l2-sampled")]
    ZeroNorm,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("inconsistent moments: {0}")]
    InconsistentMoments(String),

    #[error("profile samples are not on the expected grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
