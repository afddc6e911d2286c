use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vector must be non-empty")]
    Empty,

    #[error("component {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("component multisets differ: {0}")]
    MultisetMismatch(String),

    #[error("support length {len} exceeds configured maximum {max}")]
    SupportTooLarge { len: usize, max: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn check_len(left: usize, right: usize) -> Result<()> {
        if left != right {
            return Err(Error::LengthMismatch { left, right });
        }
        Ok(())
    }
}
