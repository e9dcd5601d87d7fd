use thiserror::Error;

/// Errors produced by the tangle library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum TangleError {
    #[error("state norm deviates from 1 by {deviation:e} (tolerance 1e-9)")]
    NotNormalized { deviation: f64 },

    #[error("expected 8 amplitudes, got {0}")]
    WrongAmplitudeCount(usize),

    #[error("amplitude is not finite")]
    NonFinite,

    #[error("local factor {factor} is not unitary (deviation {deviation:e})")]
    NotUnitary { factor: char, deviation: f64 },

    #[error("invalid family coefficients: {0}")]
    InvalidFamily(String),

    #[error("mixing weight p = {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("parameter s = {0} must be a nonnegative finite number")]
    InvalidS(f64),

    #[error("operation requires a generic family (all coefficients nonzero)")]
    DegenerateFamily,

    #[error("singular endpoint p = {0}; derivative only defined on (0, 1)")]
    SingularEndpoint(f64),

    #[error("no sign change of t'' on (0, 1)")]
    NoInflection,

    #[error("no family with s = {s} and tau_ghz = {tau_ghz}: requires cdf = {required:.6} > 3^(-3/2)")]
    Infeasible { s: f64, tau_ghz: f64, required: f64 },

    #[error("tau_ghz = {0} outside (0, 1]")]
    InvalidTauGhz(f64),

    #[error("invalid rank-2 state: {0}")]
    InvalidRankTwo(String),

    #[error("mixing matrix columns not orthonormal (deviation {0:e})")]
    NotIsometry(f64),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("malformed state JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, TangleError>;
