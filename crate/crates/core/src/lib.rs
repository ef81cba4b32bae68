//! Vertex coverings of 3-uniform hypergraphs by small patterns: graph
//! primitives, pattern detectors, extremal constructions and exhaustive or
//! randomized search for degree thresholds.

pub mod error;
pub mod hypergraph;
pub mod patterns;
pub mod constructions;
pub mod search;

pub use error::{Error, Result};
