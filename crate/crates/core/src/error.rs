use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite matrix entry encountered")]
    NonFinite,

    /// The state lost (numerically) all of its population.
    #[error("degenerate state: trace/norm {0:e} is below the representable floor")]
    DegenerateState(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("time {t:e} s is outside the covered range [0, {covered:e}] s")]
    Range { t: f64, covered: f64 },

    #[error("pulse is not unitary (residual {0:e})")]
    InvalidPulse(f64),

    #[error("schedule has zero total duration")]
    ZeroDuration,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
