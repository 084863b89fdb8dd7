//! Exact analysis of routing and coding capacity in undirected multicast
//! networks.

pub mod bounds;
pub mod checks;
pub mod connectivity;
pub mod error;
pub mod instances;
pub mod lp;
pub mod multigraph;
pub mod packing;
pub mod rate;
pub mod report;
pub mod scalar;
pub mod splitting;
pub mod strength;

pub use error::{Error, Result};
pub use multigraph::{DegreeMode, Edge, EdgeId, Instance, Multigraph, TerminalSet, VertexId};
pub use rate::Rate;

/// Exact rational used by the certified LP path.
pub type Rational = num_rational::BigRational;
/// Simplex over exact rationals.
pub type ExactSimplex = lp::Simplex<Rational>;
/// Simplex over `f64`, for quick cross-checks only.
pub type FloatSimplex = lp::Simplex<f64>;
