use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate spectral support: {0}")]
    DegenerateSupport(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("ill-conditioned solve: {0}")]
    IllConditioned(String),
}

pub type Result<T> = std::result::Result<T, Error>;
