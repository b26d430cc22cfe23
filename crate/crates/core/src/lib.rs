#![no_std]
#![doc = "Sum index and difference index of finite simple graphs."]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod cayley;
pub mod constructions;
pub mod family;
pub mod graph;
pub mod labeling;
pub mod linalg;
pub mod solver;

pub use family::FamilySpec;
pub use graph::{Edge, Graph, GraphError, GraphStats, Vertex};
pub use labeling::{induced_labels, EdgeLabelSummary, IndexKind, LabelingError, VertexLabeling};
