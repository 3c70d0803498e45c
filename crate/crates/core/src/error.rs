use num_rational::BigRational;
use thiserror::Error;

use crate::independence::SignCell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ground size mismatch: expected {expected}, found {found}")]
    GroundMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("resource cap exceeded: {what} requires {requested}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        requested: String,
        cap: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(PreconditionFailure),

    #[error("truncation error: {0}")]
    Truncation(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, requested: impl ToString, cap: impl ToString) -> Self {
        Error::ResourceCap {
            what,
            requested: requested.to_string(),
            cap: cap.to_string(),
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

/// A violated precondition, with the object that shows it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PreconditionFailure {
    #[error("family is not independent; empty sign cell {cell}")]
    Dependent { cell: SignCell },

    #[error("family contains the independent subfamily {indices:?}")]
    IndependentSubfamily { indices: Vec<usize> },

    #[error("members {i} and {j} are only {value}-separated")]
    NotSeparated {
        i: usize,
        j: usize,
        value: BigRational,
    },

    #[error("element already belongs to the algebra")]
    AlreadyMember,

    #[error("{0}")]
    Conditions(String),
}

impl From<PreconditionFailure> for Error {
    fn from(p: PreconditionFailure) -> Self {
        Error::Precondition(p)
    }
}
