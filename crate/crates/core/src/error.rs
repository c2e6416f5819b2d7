use thiserror::Error;

use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({0}, {1}) must satisfy i < j")]
    UnorderedEdge(u32, u32),
    #[error("edge ({i}, {j}) has an endpoint outside 1..={n}")]
    VertexOutOfRange { i: u32, j: u32, n: u32 },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge {0} closes a circuit")]
    CyclicInput(Edge),
    #[error("forest is not increasing: vertex {vertex} has parent {parent}")]
    NotIncreasing { vertex: u32, parent: u32 },
    #[error("edge {0} is not an edge of the graph")]
    NotInGraph(Edge),
    #[error("vertex count mismatch: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("size violation: {0}")]
    SizeViolation(String),
    #[error("index violation: {0}")]
    IndexViolation(String),
    #[error("degree {k} exceeds variable count {n}")]
    BadDegree { n: u32, k: u32 },
    #[error("{0} is not a subset of the ground set")]
    NotASubset(String),
    #[error("ground set must be strictly increasing")]
    BadGroundSet,
    #[error("subset is not in the image of phi")]
    NotInImage,
    #[error("non-canonical cycle form: {0}")]
    NonCanonicalCycle(String),
    #[error("invalid relabeling: {0}")]
    BadRelabeling(String),
}
