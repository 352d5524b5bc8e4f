use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input document or scalar literal.
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input that violates a structural requirement of the model.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A candidate completion set whose row block is not invertible.
    #[error("invalid controllable choice: {0}")]
    InvalidChoice(String),

    #[error("subset budget exceeded: {count} candidate sets > cap {cap}")]
    BudgetExceeded { count: u128, cap: u128 },

    #[error("results were computed from different systems")]
    MismatchedSystem,

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantViolation(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::InvalidChoice(_) => "InvalidChoice",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::MismatchedSystem => "MismatchedSystem",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
