use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the sample point")]
    Pole,
    #[error("series constant term is not invertible")]
    NotInvertible,
    #[error("divergent infinite product: {0}")]
    Divergent(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported type or rank: {0}")]
    Unsupported(String),
    /// A computed quantity contradicts a structural theorem (for example a
    /// singular fixed-point system); surfaced loudly rather than papered over.
    #[error("internal contradiction: {0}")]
    Contradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
