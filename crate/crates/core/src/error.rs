use thiserror::Error;

/// Errors raised by the digraph, complex and homology layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },

    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("vertex map is not a digraph morphism: edge {u} -> {v} maps to {fu} -> {fv}, which is not an edge")]
    NotAMorphism { u: usize, v: usize, fu: usize, fv: usize },

    #[error("vertex map has length {got}, expected {expected}")]
    MapLength { expected: usize, got: usize },

    #[error("simplex {0:?} is not in the ambient complex")]
    NotASubcomplex(Vec<usize>),

    #[error("simplex {simplex:?} is missing its face {face:?}")]
    NotFaceClosed { simplex: Vec<usize>, face: Vec<usize> },

    #[error("invalid simplex {simplex:?}: {reason}")]
    InvalidSimplex { simplex: Vec<usize>, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("complex is disconnected: vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),

    #[error("complex is empty")]
    EmptyComplex,

    #[error("duplicate lattice point {0:?}")]
    DuplicatePoint(Vec<i64>),

    #[error("lattice points have mixed dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid realization point: {0}")]
    InvalidPoint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
