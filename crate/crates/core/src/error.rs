use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("the {0} color class is empty")]
    EmptyClass(&'static str),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what} is {actual}, which exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("{0:?} is not a hypertree")]
    NotAHypertree(Vec<u32>),
    #[error("hyperedge `{0}` is internally active")]
    ActiveHyperedge(String),
    #[error("invalid hyperedge order: {0}")]
    InvalidOrder(String),
    #[error("no integer solution: {0}")]
    NonIntegral(String),
    #[error("triangulation search exhausted after {0} steps")]
    SearchExhausted(u64),
    #[error("staircase triangulation requires a complete bipartite graph")]
    NotComplete,
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed graph document: {0}")]
    Schema(String),
}
