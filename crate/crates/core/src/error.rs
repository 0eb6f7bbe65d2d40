use thiserror::Error;

/// Errors raised by the quiver, form and reduction operations.
///
/// Node indices carried by errors are 1-based, matching the external
/// numbering of quiver nodes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("matrix is empty")]
    Empty,

    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("node index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point has a non-positive or non-finite coordinate at position {index}")]
    NonPositivePoint { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("family parameter {name} must be a positive integer")]
    InvalidFamilyParameter { name: &'static str },

    #[error("{0} is not a verified period of the quiver")]
    NotPeriodic(usize),

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("residual rank check failed after {step} reduction steps")]
    ResidualRankError { step: usize },

    #[error("basis does not have full row rank")]
    RankDeficient,

    #[error("transformation does not preserve the canonical pairing")]
    NotSymplecticChange,

    #[error("the form has full rank: no kernel directions to test")]
    FullRank,

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
