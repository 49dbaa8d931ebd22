use thiserror::Error;

use crate::graph::{Edge, Label, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(Vertex),

    #[error("labels must be positive integers")]
    ZeroLabel,

    #[error("edge {0} does not exist")]
    EdgeNotPresent(Edge),

    #[error("label {label} is not present on edge {edge}")]
    LabelNotPresent { edge: Edge, label: Label },

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph is not temporally connected")]
    NotTemporallyConnected,

    #[error("operation requires an undirected graph")]
    Directed,

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("parameter too small: {0}")]
    TooSmall(String),

    #[error("endpoints must differ")]
    EqualEndpoints,

    #[error("graph is not a complete graph{0}")]
    NotComplete(&'static str),

    #[error("labelling is not single-label-single-edge")]
    NotSlse,

    #[error("variable x{variable} occurs {count} times, expected exactly 3")]
    OccurrenceCount { variable: usize, count: usize },

    #[error("clause {clause}: {message}")]
    InvalidClause { clause: usize, message: String },

    #[error("assignment has {got} values, formula has {expected} variables")]
    AssignmentLength { got: usize, expected: usize },

    #[error("labelling is not a sub-labelling of the gadget labelling: {0}")]
    NotSubLabelling(String),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("router with {router} vertices does not fit in a graph with {n} vertices")]
    RouterDoesNotFit { router: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
