use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum SdpError {
    #[error("matrix is not symmetric: max |a_ij - a_ji| = {max_asymmetry:e}")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("packed length {0} is not a triangular number")]
    NotTriangular(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("target rank {rank} out of range 1..={n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("eigendecomposition failed to converge")]
    EigenNoConvergence,

    #[error("invalid sparse row: {0}")]
    InvalidSparseRow(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("linear operator is identically zero")]
    ZeroOperator,

    #[error("step size must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("invalid instance parameters: {0}")]
    InvalidInstance(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("oracle out of scope: {0}")]
    OracleScope(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = SdpError> = std::result::Result<T, E>;

impl SdpError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        SdpError::Parse {
            line,
            message: message.into(),
        }
    }
}
