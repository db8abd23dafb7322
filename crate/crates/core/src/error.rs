use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 0..{n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not a tree")]
    NotATree,

    #[error("{{{u}, {v}}} is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },

    #[error("edges {e1} and {e2} do not share an endpoint")]
    EdgesNotAdjacent { e1: usize, e2: usize },

    #[error("flip #{index} is invalid: {reason}")]
    InvalidFlip { index: usize, reason: String },

    #[error("configuration space has {states} states, above the capacity limit of {limit}")]
    CapacityExceeded { states: u128, limit: u128 },

    #[error("instance is unsolvable: {0}")]
    Unsolvable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid_perm(n: usize, detail: impl Into<String>) -> Self {
        Error::InvalidPermutation {
            n,
            detail: detail.into(),
        }
    }
}
