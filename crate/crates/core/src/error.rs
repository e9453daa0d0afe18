use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: line {line}: loop edge ({vertex}, {vertex})")]
    LoopEdge {
        path: String,
        line: usize,
        vertex: usize,
    },

    #[error("{context}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        context: String,
        vertex: usize,
        n: usize,
    },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("graph has no non-isolated vertex")]
    NoBucket,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has {n} vertices, above the oracle budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },

    #[error("bracket condition violated: {what} = {value} (must be < {limit})")]
    BracketViolated {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("missing constant {0} for requested check")]
    MissingConstant(&'static str),

    #[error("input graph is not {0}")]
    NotCubic(&'static str),

    #[error("input too small to embed: {0}")]
    TooSmall(String),

    #[error("construction failed self-check: {0}")]
    Construction(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("trial with seed {seed}: {source}")]
    Trial {
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
