use thiserror::Error;

/// Errors raised by state construction, measurement, feedback and integration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("not unitary (max deviation from identity {0:.3e})")]
    NotUnitary(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("measurement set is incomplete (residual {residual:.3e} > {tolerance:.1e})")]
    Incomplete { residual: f64, tolerance: f64 },

    #[error("outcome grid cannot represent a complete measurement: {0}")]
    GridTooCoarse(String),

    #[error("outcome {index} has probability {probability:.3e}; cannot condition on it")]
    ZeroProbability { index: usize, probability: f64 },

    #[error("outcome index {index} out of range for a set of {len} operators")]
    OutcomeOutOfRange { index: usize, len: usize },

    #[error("operation requires a pure (positive-operator) measurement")]
    NotPureMeasurement,

    #[error("target is not an eigenvector of the state (residual {0:.3e})")]
    NotEigenvector(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integration step rejected at t = {time}: min eigenvalue {min_eigenvalue:.3e} before projection (dt too large?)")]
    StepRejected { time: f64, min_eigenvalue: f64 },

    #[error("trajectory {trajectory} (seed {seed}, stream {stream}) failed: {source}")]
    Trajectory {
        trajectory: usize,
        seed: u64,
        stream: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerical integration (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::StepRejected { .. } => true,
            Error::Trajectory { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
