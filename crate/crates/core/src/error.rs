use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing or invalid degree header (expected `n=<int>;`): {0}")]
    Header(String),

    #[error("syntax error: bad token `{0}`")]
    Syntax(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("invalid Gauss code: {0}")]
    InvalidCode(String),

    #[error("closure is not a knot: {cycles} components {structure}")]
    ClosureNotKnot { cycles: usize, structure: String },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("move does not match the word: {0}")]
    NoMatch(String),

    #[error("invalid reference: {0}")]
    InvalidReference(String),

    /// Raised only when an invariant that the theory guarantees is violated.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed text input.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Header(_) | Error::Syntax(_) | Error::Range(_) | Error::InvalidCode(_)
        )
    }
}
