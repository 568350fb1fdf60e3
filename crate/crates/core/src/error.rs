use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants map onto the CLI exit codes: singular input (2), precision
/// insufficiency (3) and internal consistency failures (4). Everything else is
/// a usage or input error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a form of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("quartic is singular (discriminant = {discriminant})")]
    Singular { discriminant: rug::Rational },

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid Siegel point: {0}")]
    InvalidTau(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Singular { .. } => 2,
            Error::Precision(_) => 3,
            Error::Consistency(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
