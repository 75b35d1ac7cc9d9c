use thiserror::Error;

/// Errors produced by state validation, channel application and optimization.
#[derive(Debug, Clone, Error)]
pub enum QdError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("total Hilbert-space dimension {0} exceeds the supported maximum of {max}", max = crate::linalg::MAX_TOTAL_DIM)]
    DimensionTooLarge(usize),
    #[error("matrix is not Hermitian (max |M - M^dag| entry = {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix trace {trace:.12} differs from 1 beyond tolerance")]
    NotUnitTrace { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("invalid projective measurement: {0}")]
    InvalidPvm(String),
    #[error("invalid probability data: {0}")]
    InvalidProbabilities(String),
    #[error("measurement outcome {outcome} has probability {probability:.3e}; conditional state undefined")]
    ZeroProbabilityOutcome { outcome: usize, probability: f64 },
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("objective function returned a non-finite value during minimization")]
    NonFiniteObjective,
    #[error("invalid optimizer configuration: {0}")]
    InvalidOptimizerConfig(String),
    #[error("could not parse state specification `{spec}`: {reason}")]
    SpecParse { spec: String, reason: String },
}

pub type Result<T> = std::result::Result<T, QdError>;
