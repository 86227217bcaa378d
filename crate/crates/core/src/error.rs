use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex index {index} out of range (graph has {count} vertices)")]
    IndexOutOfRange { index: u64, count: u64 },

    #[error("vertex indices start at 1")]
    ZeroIndex,

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("no path from {from} to {to} within radius {cap}")]
    RadiusExceeded {
        from: VertexId,
        to: VertexId,
        cap: usize,
    },

    #[error("no weight given for edge ({0}, {1})")]
    MissingWeight(VertexId, VertexId),

    #[error("weight for edge ({0}, {1}) must be positive")]
    NonpositiveWeight(VertexId, VertexId),

    #[error("beta must be nonzero")]
    BetaZero,

    #[error("sign scalar of a quasiadjacency matrix must be nonzero")]
    SignZero,

    #[error("scalar {0} is not a rational number; select the gaussian field")]
    FieldMismatch(String),

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("budget exceeded: {what} = {requested} > cap {cap}")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("graph has no vertex with index above {0}")]
    NoWitness(u64),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),
}
