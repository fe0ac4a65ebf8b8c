use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid transfer function: {0}")]
    InvalidTransferFunction(String),

    #[error("denominator vanishes at omega = {omega} (|den| = {modulus:e})")]
    PoleOnBoundary { omega: f64, modulus: f64 },

    #[error("operation requires a {expected} transfer function")]
    DomainMismatch { expected: &'static str },

    #[error("transfer function is not proper (numerator degree {num} > denominator degree {den})")]
    NotProper { num: usize, den: usize },

    #[error("plant has direct feedthrough; the algebraic loop is not solved")]
    NotStrictlyProper,

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),

    #[error("multiplier not suitable: Re[M(1/k+G)] = {value:e} at omega = {omega}")]
    NotSuitable { omega: f64, value: f64 },

    #[error("no searched multiplier certifies a finite gain")]
    NotFound,

    #[error("no sign-change bracket within |u| <= {limit:e}")]
    NoBracket { limit: f64 },

    #[error("signal length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid nonlinearity: {0}")]
    InvalidNonlinearity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
