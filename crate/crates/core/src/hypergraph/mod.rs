//! 3-uniform hypergraphs on at most 64 vertices, their link graphs, and
//! isomorphism.

mod canon;
mod text;
mod three_graph;
mod triple;
mod two_graph;
mod vertex_set;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, Canonical};
pub use text::{format_threegraph, parse_document, parse_threegraph, Document};
pub use three_graph::ThreeGraph;
pub use triple::{binomial, triple_index, triple_unindex, TripleIndex};
pub use two_graph::TwoGraph;
pub use vertex_set::{Bits, VertexSet};

pub(crate) use triple::triple_table;
pub(crate) use vertex_set::low_mask;

/// Largest supported vertex count (vertex sets are 64-bit masks).
pub const MAX_VERTICES: usize = 64;
