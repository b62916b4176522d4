use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bad format: {0}")]
    Format(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("empty sample: {0}")]
    EmptySample(String),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    /// Short stable identifier, used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Param(_) => "param",
            Error::Parse { .. } => "parse",
            Error::Format(_) => "format",
            Error::Unsupported(_) => "unsupported",
            Error::EmptySample(_) => "empty-sample",
            Error::EmptyGraph => "empty-graph",
            Error::Invariant(_) => "invariant",
            Error::Io(_) => "io",
        }
    }
}
