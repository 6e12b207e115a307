//! Irreducible triangulations of surfaces.
//!
//! Combinatorial maps with edge signatures, edge contraction and vertex
//! splitting, genus reasoning on subgraphs, the independent-set certificates
//! bounding the order of irreducible triangulations, exact replay of the
//! inequality derivations, and census enumeration.

pub mod catalog;
pub mod census;
pub mod certificate;
pub mod farkas;
pub mod genus;
pub mod graph;
pub mod ops;
pub mod surface_map;
pub mod triangulation;

pub use graph::SimpleGraph;
pub use surface_map::{CombinatorialMap, FaceListError, MapError};
pub use triangulation::{validate_triangulation, QueryError, Triangulation, ValidationError};
