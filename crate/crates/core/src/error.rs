use thiserror::Error;

use crate::word::SymbolRef;

/// Errors raised anywhere in the library.
///
/// Failed *checks* (a relator that does not hold, a trace that does not
/// replay) are reported as data, not as errors. These variants signal that a
/// computation could not be carried out at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no image assigned to symbol {0}")]
    MissingImage(SymbolRef),

    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("array of length {0} is not a permutation")]
    NotAPermutation(usize),

    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("element is not in the group")]
    NotInGroup,

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("symbol {0} out of range")]
    SymbolOutOfRange(SymbolRef),

    #[error("operation requires {expected} mode")]
    ModeMismatch { expected: &'static str },

    #[error("malformed derivation step {index}: {reason}")]
    MalformedStep { index: usize, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("example `{name}` does not support n = {n} (supported: {supported})")]
    ExampleRange {
        name: String,
        n: usize,
        supported: &'static str,
    },

    #[error("induced action is not well defined: {0}")]
    ActionNotWellDefined(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("integer overflow in fixed-width arithmetic")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
