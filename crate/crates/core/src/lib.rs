//! Deciding whether a graph contains a subdivision of the seven-spoke wheel.

pub mod connectivity;
pub mod cutsets;
pub mod decomposition;
pub mod error;
mod flow;
pub mod graph;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod solver;
mod traces;

pub use error::{Error, GraphError, ParseError};
pub use graph::{bridges_of, edit, induced_subgraph, Bridge, Edge, Graph, GraphBuilder, Relabeling, Vertex};
pub use io::{parse_graph, serialize_graph, Format};
