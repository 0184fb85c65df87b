use thiserror::Error;

/// Errors raised by the simulation and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("noise trajectory covers [0, {covered}] but the window is [0, {window}]")]
    GridMismatch { covered: f64, window: f64 },

    #[error("closed-form cat-state expressions require an even particle number, got N = {0}")]
    OddParticleNumber(usize),

    #[error("ill-conditioned regime: {0}")]
    IllConditioned(String),

    #[error("need at least {needed} points for a fit, got {found}")]
    TooFewPoints { needed: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
