use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list is empty")]
    EmptyInput,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("node index {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("unknown node id {0}")]
    UnknownNode(u64),

    #[error("every node has zero out-degree; ratio average is undefined")]
    NoDefinedRatio,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {node_count} nodes, above the dense matrix cap of {cap}")]
    MatrixTooLarge { node_count: usize, cap: usize },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("estimator expects a {expected} sample, got {actual}")]
    WrongMethod { expected: &'static str, actual: &'static str },

    #[error("estimate undefined: {0}")]
    Undefined(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("trace format: {0}")]
    TraceFormat(String),

    #[error("graph hash mismatch: trace was sampled from {trace}, graph is {graph}")]
    GraphMismatch { trace: String, graph: String },

    #[error("missing ground truth for {0}")]
    MissingTruth(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context { context: context.into(), source: Box::new(self) }
    }
}
