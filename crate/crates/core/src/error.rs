use thiserror::Error;

/// Errors raised by the arithmetic kernels and the verification checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("division by the zero rational function")]
    DivisionByZeroRF,
    #[error("pole at q = {0}")]
    PoleAtPoint(String),
    #[error("denominator shares a factor with Phi_{n}(q)")]
    DenominatorNotCoprime { n: u64 },
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    #[error("series denominator vanishes identically at term {0}")]
    IdenticallyZeroDenominator(usize),
    #[error("grid for {variable} could not be filled: {reason}")]
    GridPole { variable: String, reason: String },
    #[error("grid exhausted after {consumed} candidates ({filled} of {required} points)")]
    GridExhausted {
        consumed: usize,
        filled: usize,
        required: usize,
    },
    #[error("{0} is not a p-adic unit")]
    NotPAdicUnit(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed serialized value: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
