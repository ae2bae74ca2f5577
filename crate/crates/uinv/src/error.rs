//! Error type shared across the crate.

use crate::var::VarId;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A polynomial was evaluated at a point that leaves a variable unassigned.
    #[error("missing assignment for variable {0}")]
    MissingAssignment(VarId),

    /// Corner-minor order outside `1..=n`.
    #[error("corner minor order {k} out of range for a matrix of order {n}")]
    BadOrder { k: usize, n: usize },

    /// Generator or slice index outside the valid `(k, i)` range.
    #[error("index (k={k}, i={i}) invalid for board size n={n}")]
    BadIndex { k: usize, i: usize, n: usize },

    /// Matrix inversion (or conjugation) attempted on a non-invertible matrix.
    #[error("matrix is not invertible")]
    Singular,

    /// The restricted generator does not have the guaranteed triangular shape.
    /// Reaching this indicates an implementation bug, not bad input.
    #[error("triangular structure violated for (k={k}, i={i}, n={n}): {detail}")]
    StructureViolation { k: usize, i: usize, n: usize, detail: String },

    /// Invariant values that cannot come from a matrix in the open stratum.
    #[error("degenerate invariant values: {0}")]
    DegenerateInput(String),

    /// A corner minor of the input vanishes; reports the smallest such order.
    #[error("matrix not in the open stratum: corner minor J_{0} vanishes")]
    NotInOmega(usize),

    /// Classification input mixes matrices of different orders.
    #[error("matrices of mixed orders: expected n={expected}, found n={found}")]
    MixedSizes { expected: usize, found: usize },

    /// Fingerprint passed to the slice solver is missing indices.
    #[error("incomplete invariant values: missing J[{k}][{i}]")]
    IncompleteValues { k: usize, i: usize },

    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
