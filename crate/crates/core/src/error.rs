use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: Q(sqrt {0}) and Q(sqrt {1}) cannot be combined")]
    FieldMismatch(u64, u64),

    #[error("invalid radicand {0}: expected 0, 1 or a square-free integer")]
    InvalidRadicand(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polytope is empty: no feasible vertex")]
    Empty,

    #[error("polytope is unbounded: {0}")]
    Unbounded(String),

    #[error("polytope is not simple: vertex {vertex} lies on {active} facets (expected {expected})")]
    NonSimple {
        vertex: String,
        active: usize,
        expected: usize,
    },

    #[error("half-space {0} is redundant: it is not active at any vertex")]
    Redundant(usize),

    #[error("projection is not surjective: the normals span a rank {rank} subspace of R^{m}")]
    NotSurjective { rank: usize, m: usize },

    #[error("direction is not generic: {0}")]
    NonGeneric(String),

    #[error("point lies outside the polytope: constraint {0} is violated")]
    OutsideDelta(usize),

    #[error("index bound violated: face {face} of codimension {codim} has minimal vertex of index {index}")]
    IndexBoundViolation {
        face: String,
        codim: usize,
        index: usize,
    },

    #[error("negative h-vector entry h_{k} = {value}")]
    NegativeEntry { k: usize, value: i64 },

    #[error("Euler characteristic {euler} differs from the vertex count {vertices}")]
    EulerMismatch { euler: i64, vertices: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
