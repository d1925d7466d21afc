//! Vertex expansion, sparse cuts, expander extraction, and the path, cycle
//! and minor constructions built on top of them.

pub mod certification;
pub mod dot;
pub mod error;
pub mod extraction;
pub(crate) mod exact;
pub mod generators;
pub mod graph;
pub mod minors;
pub mod paths;
pub mod report;
pub mod rng;
pub mod spectral;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use vertex_set::VertexSet;
