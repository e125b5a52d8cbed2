//! Constructive witnesses for tree-versus-odd-cycle Ramsey numbers.
//!
//! Given a graph `G` on at least `2n - 1` vertices, an `n`-vertex tree `T` and
//! an odd cycle length `m`, [`witness::find_witness`] returns either an
//! `m`-cycle of `G` or an embedding of `T` into the complement of `G`. The
//! [`oracle`] module holds exhaustive ground-truth searches used to cross-check
//! the engine at small orders.

pub mod embedding;
pub mod embeddings;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod tree;
pub mod vertex_set;
pub mod witness;

pub use embedding::Embedding;
pub use error::{EmbedError, GraphError, ParseError};
pub use graph::Graph;
pub use tree::{tree_from_prufer, Forest, Tree};
pub use vertex_set::VertexSet;
