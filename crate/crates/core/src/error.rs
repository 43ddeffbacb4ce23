use thiserror::Error;

/// Errors raised by the numerics, forward and inversion layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature order must be at least 1, got {0}")]
    InvalidOrder(i64),
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("grid is not valid: {0}")]
    InvalidGrid(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("{0} requires a uniform grid")]
    NonUniformGrid(&'static str),
    #[error("derivative of order {order} not supported: {reason}")]
    UnsupportedDerivative { order: usize, reason: String },
    #[error("point {x} lies outside [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("dimension must be an odd integer >= 3, got {0}")]
    InvalidDimension(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("spherical-harmonic index (q={q}, s={s}) out of range")]
    InvalidMode { q: i64, s: i64 },
    #[error("angular grid cannot resolve degree {degree}: {reason}")]
    InsufficientResolution { degree: usize, reason: String },
    #[error("empty reconstruction window: eps' = {eps_prime} >= 1 - eps = {t_end}")]
    EmptyWindow { eps_prime: f64, t_end: f64 },
    #[error("leading ODE coefficient vanishes at t = {0}")]
    SingularLeadingCoefficient(f64),
    #[error("reference norm is zero on [{a}, {b}]")]
    ZeroNorm { a: f64, b: f64 },
    #[error("analytic back-end available only for n ∈ {{3,5,7}} (got n = {0})")]
    AnalyticUnavailable(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
