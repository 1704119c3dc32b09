//! Error type shared by the whole library.

use thiserror::Error;

/// Failures that prevent an operation from producing a value.
///
/// Mathematical failures of axioms are not errors: verifiers return a
/// [`Report`](crate::report::Report) instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid group table: {0}")]
    Group(#[from] GroupError),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structural inconsistency: {0}")]
    Structure(String),
    #[error("grading violation at degree {degree}: {detail}")]
    Grading { degree: usize, detail: String },
}

/// The distinct ways a multiplication table can fail to define a group.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("entry {0} is out of range")]
    OutOfRange(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
