//! Exact flip distances and explicit flip sequences for relabeling graphs by
//! swapping the labels of adjacent vertices (or of edges sharing an
//! endpoint).
//!
//! The crate covers paths and stars in closed form, general connected graphs
//! through a spanning-tree construction, the privileged-label variant where a
//! swap must involve at least one privileged label, reductions between the
//! vertex and edge problems, and a breadth-first oracle over the full
//! configuration space that certifies the formulas on small instances.

pub mod error;
pub mod exact_path;
pub mod exact_star;
pub mod graph;
pub mod instance;
pub mod labeling;
pub mod oracle;
pub mod perm;
pub mod privileged;
pub mod reductions;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{Family, Graph};
pub use labeling::{
    apply_flip, apply_sequence, relative_permutation, relative_vertex, EdgeFlip, EdgeFlipSequence,
    EdgeLabeling, Flip, FlipSequence, VertexFlip, VertexFlipSequence, VertexLabeling,
};
pub use perm::{CycleDecomposition, Parity, Permutation};
pub use privileged::{Decision, Method, PrivilegedInstance, Verdict, Witness};
