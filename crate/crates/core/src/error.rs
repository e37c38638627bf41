use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid standard form: {0}")]
    InvalidStandardForm(String),
    #[error("invalid evaluation points: {0}")]
    InvalidPoints(String),
    #[error("{0} is a gap of the Weierstrass semigroup")]
    Gap(u64),
    #[error("0 has no predecessor in the semigroup")]
    NoPredecessor,
    #[error("empty nongap set")]
    EmptyGamma,
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
