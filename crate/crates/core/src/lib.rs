//! Tope graphs of simplicial central hyperplane arrangements, supersolvability,
//! and certified Hamiltonian cycles (Gray codes) on their regions.

pub mod arrangement;
pub mod builder;
pub mod catalogue;
pub mod error;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod scalar;
pub mod tope;

pub use arrangement::{project_tope, Arrangement, Hyperplane, IndexMap};
pub use builder::{arrangement_tope_graph, build_tope_graph, BuildOptions, PositiveSystem, RegionFrame};
pub use error::{Error, Result};
pub use graph::{Edge, TopeGraph};
pub use scalar::{FieldTag, Rational, Scalar};
pub use tope::{adjacency, Sign, Tope};
