use thiserror::Error;

/// Errors produced by graph construction, ingestion and the exact solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: invalid vertex id {id} (ids are 1-based)")]
    InvalidVertexId { line: usize, id: String },

    #[error("line {line}: vertex {id} exceeds declared vertex count {n}")]
    VertexBeyondHeader { line: usize, id: usize, n: usize },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge count {m} out of range: a simple graph on {n} vertices has at most {max} edges")]
    EdgeCountOutOfRange { n: usize, m: u64, max: u64 },

    #[error("graph size overflows: {0}")]
    Overflow(String),

    #[error("graph has {n} vertices, above the cap of {cap} for {what}")]
    TooLarge { what: &'static str, n: usize, cap: usize },

    #[error("invalid matrix parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
