use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("no edge ({0}, {1})")]
    NoSuchEdge(Vertex, Vertex),
    #[error("host graph has {n} vertices, above the limit of {limit}")]
    HostTooLarge { n: usize, limit: usize },
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("({0}, {1}) is not a base non-edge")]
    NotABaseNonEdge(Vertex, Vertex),
    #[error("construction stuck after {constructed} of {total} vertices")]
    StuckConstruction { constructed: usize, total: usize },
    #[error("step index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("extreme edge ({0}, {1}) already present")]
    ExtremeEdgeExists(Vertex, Vertex),
    #[error("graph is not 1-dof tree-decomposable: {0}")]
    NotOneDofTreeDecomposable(String),
    #[error("construction has fewer than two steps")]
    TooFewSteps,
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
