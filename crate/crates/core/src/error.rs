use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported product of {lhs} and {rhs}: bases differ")]
    UnsupportedProduct { lhs: String, rhs: String },

    #[error("alphabet size {0} out of range (must be 2..=36)")]
    AlphabetSize(usize),

    #[error("symbol {symbol} out of range for alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid rule: {0}")]
    Rule(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
