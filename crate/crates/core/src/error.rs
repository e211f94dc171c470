use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
    #[error("vertex {vertex} has {degree} incident darts, expected 3")]
    NotTrivalent { vertex: usize, degree: usize },
    #[error("graph is not connected ({components} components)")]
    NotConnected { components: usize },
    #[error("resource limit exceeded: {what} ({value} > {limit})")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("edge {0} is a self-loop; IHX is not applied across loops")]
    LoopEdge(usize),
    #[error("graph has {got} vertices, basis expects {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("ambient dimension d = {0} is too small; need d >= 4")]
    DimensionTooSmall(u32),
    #[error("no Type I/II vertex typing exists (exhaustive search over {nodes_explored} nodes)")]
    Infeasible { nodes_explored: u64 },
    #[error("target is not in the row span")]
    NoSolution,
    #[error("rank cross-check failed: rational rank {rational}, modular rank {modular}")]
    RankMismatch { rational: usize, modular: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
