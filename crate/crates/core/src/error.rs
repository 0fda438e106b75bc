use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid vertex {vertex} (graph has {num_vertices} vertices)")]
    InvalidVertex { vertex: usize, num_vertices: usize },

    #[error("no edge {from} -> {to}")]
    MissingEdge { from: usize, to: usize },

    #[error("unknown aggregation scheme `{0}`")]
    UnknownScheme(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("enumeration incomplete: {0}")]
    EnumerationIncomplete(String),

    #[error("no start/goal candidate pair satisfies the distance threshold")]
    NoCandidatePair,

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
