use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("regime error: {0}")]
    Regime(String),

    #[error("pole at E = {energy}: |A| = {abs_a:e} is below the pole threshold")]
    Pole { energy: f64, abs_a: f64 },

    #[error("underflow: {0}")]
    Underflow(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("loss of accuracy: {0}")]
    Accuracy(String),

    #[error("no sign change of the matching function on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("scan exhausted: found {found} of {wanted} roots below E = {ceiling}")]
    ScanExhausted {
        found: usize,
        wanted: usize,
        ceiling: f64,
    },

    #[error("incompatible request: {0}")]
    Incompatible(String),

    #[error("resolution error: {0}")]
    Resolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
