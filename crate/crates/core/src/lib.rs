//! Low Cayley complexity of 1-dof tree-decomposable constraint graphs.

pub mod analysis;
pub mod bench;
pub mod cayley;
pub mod construction;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod minor;
pub mod planarity;
pub mod rigidity;
pub mod treedecomp;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{contract_edge, edge, is_triangle_free, Edge, Graph, Vertex};
