//! Constrained multi-agent path finding on directed graphs.
//!
//! Pebbles move one at a time along directed edges, and the set of occupied
//! vertices must stay admissible for a family of capacity constraints. The
//! crate reduces such problems to plain pebble motion on a reduced graph
//! over an independent vertex set, searches for large independent sets,
//! lifts reduced plans back to the original graph and validates them.

pub mod cli;
pub mod cmis;
pub mod constraints;
pub mod error;
pub mod fixtures;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod planner;
pub mod random;
pub mod reduction;

pub use error::{Error, Result};
pub use graph::{Digraph, Vertex, VertexSet};
