use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("noise floor: bracket values {lo:e}, {hi:e} are below oracle noise {noise:e}")]
    NoiseFloor { lo: f64, hi: f64, noise: f64 },

    #[error("zero search: {0}")]
    ZeroSearch(String),
}

impl Error {
    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Overflow(_) => "overflow",
            Error::NoSignChange { .. } => "no-sign-change",
            Error::NonConvergence { .. } => "non-convergence",
            Error::NoiseFloor { .. } => "noise-floor",
            Error::ZeroSearch(_) => "zero-search",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
