//! Treewidth laboratory for random graphs.
//!
//! Graph types, seeded random-graph samplers, exact and heuristic treewidth,
//! balanced-partition machinery, closed-form bound evaluation and a Monte
//! Carlo experiment harness.

pub mod analytics;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod partitions;
pub mod treewidth;

pub use error::{Error, Result};
pub use graph::{MultiGraph, SimpleGraph, VertexSet};
pub use partitions::TriPartition;
