use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("size mismatch: {left} qubits vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what}: got {got}, supported limit is {limit}")]
    Capability {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected; only connected graphs are supported here")]
    Disconnected,

    #[error("graph must have at least {min} vertices, got {got}")]
    TooSmall { min: usize, got: usize },

    #[error("invalid overlap family or partition: {0}")]
    InvalidPartition(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("event does not belong to this stabilizer group: {0}")]
    EventMismatch(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("fixture: {0}")]
    Fixture(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
