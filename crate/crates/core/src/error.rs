use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An input lies outside the domain `[0, size)` of a bijection.
    #[error("value {value} outside domain [0, {size})")]
    Domain { value: u64, size: u64 },

    /// A domain error for real-valued functions such as `erf_inv`.
    #[error("argument {0} outside the function domain")]
    OutOfRange(f64),

    #[error("permutation of length {0} cannot be ranked in 64 bits")]
    Overflow(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
