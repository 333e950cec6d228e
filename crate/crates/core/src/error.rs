use thiserror::Error;

/// Errors reported by graph construction, metrics, enumeration, generation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: u32 },
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u64, vertex_count: usize },
    #[error("operation requires at least {required} vertices, graph has {vertex_count}")]
    TooFewVertices { vertex_count: usize, required: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("subset is not a quasi-clique under the given parameters")]
    NotQuasiClique,
    #[error("brute-force oracle limited to {cap} vertices, graph has {vertex_count}")]
    OracleTooLarge { vertex_count: usize, cap: usize },
    #[error("degree sequence has odd sum {sum}")]
    OddDegreeSum { sum: u64 },
    #[error("degree sequence is not realizable as a simple graph")]
    NotGraphical,
    #[error("configuration model failed after {attempts} attempts")]
    RetriesExhausted { attempts: u32 },
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown output format {0:?} (expected tsv or structured)")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
