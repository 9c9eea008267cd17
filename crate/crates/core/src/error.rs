use thiserror::Error;

use crate::combinatorics::SubsetMask;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The length vector lies on the wall `H_J`.
    #[error("nongeneric length vector: lies on wall H_{0}")]
    Nongeneric(SubsetMask),

    #[error("length vector is not sorted nondecreasingly")]
    Unsorted,

    #[error("invalid length vector: {0}")]
    InvalidLengths(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid genetic code: {0}")]
    InvalidCode(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("m = {m} exceeds the supported bound {bound} (override required)")]
    BoundExceeded { m: usize, bound: usize },

    #[error("the empty chamber has empty chain and polygon spaces")]
    EmptyChamber,

    #[error("no chamber has genetic code {0}")]
    NotAChamber(String),

    #[error("no symbolic description available for {0}")]
    UnknownDescription(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
