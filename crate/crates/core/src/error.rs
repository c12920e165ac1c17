use thiserror::Error;

use crate::eja::AlgebraKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidKind(String),

    #[error("kind mismatch: {left} vs {right}")]
    KindMismatch {
        left: AlgebraKind,
        right: AlgebraKind,
    },

    #[error("expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite coordinate at position {0}")]
    NonFinite(usize),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("slit blocks overlap at index {0}")]
    OverlappingBlocks(usize),

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("not a valid state: {0}")]
    NotAState(String),

    #[error("not a valid effect: {0}")]
    NotAnEffect(String),

    #[error("not a channel: {0}")]
    NotAChannel(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("value table is missing subset {0}")]
    MissingSubset(String),

    #[error("rank {rank} is too small for order {order}")]
    InsufficientRank { rank: usize, order: usize },

    #[error("unsupported tensor product: {0}")]
    UnsupportedTensor(String),

    #[error("zero dagger norm")]
    ZeroNorm,

    #[error("matrix is singular")]
    Singular,

    #[error("{0}")]
    Descriptor(String),
}
