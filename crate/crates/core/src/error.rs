use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("field characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("unsupported field characteristic {0} (must be prime)")]
    BadCharacteristic(u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("restriction needs a <= b, got a = {a}, b = {b}")]
    BadRestriction { a: String, b: String },
    #[error("exhaustive search needs {needed} unknowns, cap is {cap}")]
    Capacity { needed: usize, cap: usize },
    #[error("map is not proper on the support: {0}")]
    NotProper(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unsupported band content: {0}")]
    UnsupportedBands(String),
    #[error("inconsistent model: {0}")]
    InconsistentModel(String),
    #[error("seed law violated: {0}")]
    SeedViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised while reading a document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("unrecognized version header `{0}`")]
    Version(String),
}

impl ParseError {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn semantic(line: usize, message: impl Into<String>) -> Self {
        ParseError::Semantic {
            line,
            message: message.into(),
        }
    }

    /// Re-anchor a literal-level error to a document position.
    pub(crate) fn at(self, line: usize, column: usize) -> Self {
        match self {
            ParseError::Syntax { message, .. } => ParseError::Syntax {
                line,
                column,
                message,
            },
            ParseError::Semantic { message, .. } => ParseError::Semantic { line, message },
            other => other,
        }
    }
}
