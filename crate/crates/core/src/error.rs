use thiserror::Error;

/// Syntax error in polynomial text, 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("expected a nonzero linear form, got `{0}`")]
    NotLinear(String),

    #[error("the zero linear series has no apolar algebra")]
    ZeroSeries,

    #[error("degree {t} out of range 0..={max}")]
    DegreeOutOfRange { t: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("family `{0}` has no closed-form Hilbert function")]
    NoClosedForm(String),

    #[error("bound report is inconsistent: {0}")]
    Inconsistent(String),

    #[error("value {0} does not fit the report encoding")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
