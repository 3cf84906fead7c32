use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid edge ({u}, {v}) for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("edge index {index} out of range for a graph on {n} vertices")]
    InvalidEdgeIndex { index: usize, n: usize },

    #[error("vertex {v} out of range for a graph on {n} vertices")]
    InvalidVertex { v: usize, n: usize },

    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("{what} = {value} is outside [0, 1]")]
    Probability { what: &'static str, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid small graph: {0}")]
    InvalidSmallGraph(String),

    #[error("fast change count is not available for {0:?}; use counts::delta_count")]
    UnsupportedKind(crate::counts::GraphKind),

    #[error("invalid model: {0}")]
    InvalidSpec(String),

    #[error("start states are not comparable: lower state is not a subgraph of upper state")]
    NotComparable,

    #[error("exact enumeration limited to n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },

    #[error("need at least {needed} values, got {got}")]
    NotEnoughData { needed: usize, got: usize },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("missing input files: {}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "))]
    MissingInputs(Vec<PathBuf>),

    #[error("{0} already exists; pass --force to overwrite")]
    OutputExists(PathBuf),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by user-supplied configuration rather than by the run itself.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::InvalidSpec(_)
                | Error::InvalidSmallGraph(_)
                | Error::Probability { .. }
                | Error::OutputExists(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
