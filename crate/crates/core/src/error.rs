use thiserror::Error;

use crate::words::Word;

/// Syntax error in one of the text formats, with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    /// Shift the reported position by `offset`, for errors raised on a substring.
    pub fn offset(mut self, offset: usize) -> Self {
        self.position += offset;
        self
    }
}

/// Domain errors: a value violates the precondition of an operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a prefix code: {0} is a prefix of {1}")]
    NotPrefixCode(Word, Word),
    #[error("prefix code is not maximal: {0}")]
    NotMaximal(String),
    #[error("a maximal prefix code cannot be empty")]
    EmptyCode,
    #[error("domain and range have different sizes ({domain} vs {range})")]
    SizeMismatch { domain: usize, range: usize },
    #[error("{word} occurs twice in the {side} of the table")]
    Duplicate { word: Word, side: &'static str },
    #[error("{what} = {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("{0} is not in the domain code")]
    NotInDomain(Word),
    #[error("{0} is not in the code")]
    NotInCode(Word),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
