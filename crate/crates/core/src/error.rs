use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set must not be empty")]
    EmptyVertexSet,

    #[error("{0:?} is not a clique")]
    NotAClique(Vec<usize>),

    #[error("clique projection needs at least two vertices, got {0}")]
    CliqueTooSmall(usize),

    #[error("clique {0:?} already appears in the projection trace")]
    DuplicateClique(Vec<usize>),

    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("graph has {n} vertices, enumeration is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("time budget exhausted before optimality was proven")]
    Timeout,

    #[error("step index {index} exceeds trace length {len}")]
    StepOutOfRange { index: usize, len: usize },

    #[error("cuts were not generated from the same trace and seed")]
    MismatchedCuts,

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("simplex stalled after {iterations} iterations")]
    LpStalled { iterations: usize },
}
