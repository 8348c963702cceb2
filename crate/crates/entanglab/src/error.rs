use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
///
/// Every validation failure carries the measured residual or offending value
/// so callers (and test output) can see how far the input was from valid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("{what} is empty")]
    Empty { what: &'static str },

    #[error("state is not normalized: |sum of squared amplitudes - 1| = {residual:.3e}")]
    NotNormalized { residual: f64 },

    #[error("operator is not unitary: max entry of |U*U - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("matrix is not Hermitian: max entry of |H - H*| = {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimTooLarge { dim: usize, max: usize },

    #[error("probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    ProbabilitiesNotNormalized { sum: f64 },

    #[error("grid needs at least {min} points per axis, got {got}")]
    GridTooSmall { got: usize, min: usize },

    #[error("fringe rate is identically zero; visibility is undefined")]
    DegenerateFringe,

    #[error("exact environment simulation supports at most {max} qubits, got {got}")]
    EnvironmentTooLarge { got: usize, max: usize },

    #[error("half-life must be positive, got {half_life}")]
    InvalidHalfLife { half_life: f64 },

    #[error("time must be non-negative, got {t}")]
    NegativeTime { t: f64 },

    #[error("sample run needs at least one event")]
    NoEvents,
}

pub type Result<T> = std::result::Result<T, Error>;
