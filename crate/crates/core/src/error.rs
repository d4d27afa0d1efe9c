use std::fmt;

use thiserror::Error;

use crate::moves::Move;
use crate::Vertex;

/// Structural violations of the simple-graph invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(Vertex, Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("not a bijection: {0}")]
    NotBijection(String),
}

/// Error from one of the text formats, tagged with the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Why a single move could not be applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    OutOfRange(Vertex),
    NotDistinct,
    NotAdjacent(Vertex, Vertex),
    AlreadyAdjacent(Vertex, Vertex),
    WrongNewVertex {
        expected: Vertex,
        got: Vertex,
    },
    WrongDegree {
        vertex: Vertex,
        expected: usize,
        actual: usize,
    },
    WrongNeighbors(Vertex),
    /// Raised only by full-check replay.
    Disconnected,
    /// Raised only by full-check replay.
    EulerDrift {
        before: i64,
        after: i64,
    },
    /// Raised only by full-check replay.
    CurvatureMismatch {
        curvature_sum: i64,
        chi: i64,
    },
    /// Raised only by full-check replay.
    EdgeBounds {
        n: usize,
        e: usize,
    },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::OutOfRange(v) => write!(f, "vertex {v} does not exist"),
            Rejection::NotDistinct => write!(f, "vertices are not distinct"),
            Rejection::NotAdjacent(a, b) => write!(f, "{a} and {b} are not adjacent"),
            Rejection::AlreadyAdjacent(a, b) => write!(f, "{a} and {b} are already adjacent"),
            Rejection::WrongNewVertex { expected, got } => {
                write!(f, "new vertex must be {expected}, got {got}")
            }
            Rejection::WrongDegree {
                vertex,
                expected,
                actual,
            } => write!(
                f,
                "vertex {vertex} has degree {actual}, expected {expected}"
            ),
            Rejection::WrongNeighbors(v) => write!(f, "vertex {v} has the wrong neighbours"),
            Rejection::Disconnected => write!(f, "graph became disconnected"),
            Rejection::EulerDrift { before, after } => {
                write!(f, "euler characteristic changed from {before} to {after}")
            }
            Rejection::CurvatureMismatch { curvature_sum, chi } => {
                write!(
                    f,
                    "curvature sum {curvature_sum} differs from 2*chi = {}",
                    2 * chi
                )
            }
            Rejection::EdgeBounds { n, e } => {
                write!(
                    f,
                    "edge count {e} outside connected simple range for n = {n}"
                )
            }
        }
    }
}

/// A move of a script failed; `index` is 0-based within the script.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move {index} ({mv}) rejected: {reason}")]
pub struct MoveRejected {
    pub index: usize,
    pub mv: Move,
    pub reason: Rejection,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Rejected(#[from] MoveRejected),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A claim the construction relies on did not hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
