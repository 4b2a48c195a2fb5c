use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),

    #[error("graph is not connected")]
    NotConnected,

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("instance has {n} vertices, above the exact-solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("no reducing edge exists")]
    NoReducingEdge,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
