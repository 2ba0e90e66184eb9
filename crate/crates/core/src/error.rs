use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge {edge} is not in the graph")]
    MissingEdge { edge: Edge },
    #[error("edge {edge} touches a removed vertex")]
    EdgeOnRemovedVertex { edge: Edge },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: {message} (byte offset {offset})")]
    Graph6 { offset: usize, message: String },
    #[error("edge-list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not connected")]
    Disconnected,
    #[error("{0:?} does not separate the graph")]
    NotASeparator(Vec<Vertex>),
    #[error("cutset finding does not verify against the graph")]
    InvalidCutset,
    #[error("reduction finding does not verify against the graph")]
    InvalidReduction,
    #[error("bridge has {0} vertices outside the separating set; at most 3 are supported")]
    BridgeTooLarge(usize),
    #[error("graph has {n} vertices, above the oracle ceiling of {ceiling}")]
    OverCeiling { n: usize, ceiling: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid suite configuration: {0}")]
    InvalidConfig(String),
    #[error("degenerate split: {0}")]
    DegenerateSplit(String),
}
