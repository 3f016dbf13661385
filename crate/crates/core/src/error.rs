use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("gram matrix is numerically singular")]
    SingularGram,
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail_invalid {
    ($($arg:tt)*) => {
        return Err(crate::error::Error::InvalidArgument(format!($($arg)*)))
    };
}

pub(crate) use bail_invalid;
