//! Exact computations around simplicial chromatic polynomials.
//!
//! The crate counts vertex colorings of simplicial complexes that avoid
//! monochromatic minimal nonfaces, reads those counts as anti-Ramsey edge
//! colorings of graphs, and checks the identities that tie them to h-vectors,
//! Ehrhart series and δ-vectors of lattice polytopes, and Hodge-filtration
//! dimensions of toric hypersurfaces. Everything is integer or rational; no
//! floating point is used anywhere.
//!
//! Dimension convention: identity checks use the algebraic (Krull) dimension
//! `d = dim S + 1` of a complex, never the simplicial dimension.

pub mod poly;

pub use poly::{IntPolynomial, LaurentPolynomial, PolyError, RatPolynomial, RationalFunction};
pub mod complex;
pub mod unionfind;

pub use complex::{
    ApexAugmentation, ComplexError, ComplexSpec, PropertyIWitness, SimplicialComplex, UniformCReport, UniformMode,
    VertexSet,
};
pub mod chromatic;
pub mod report;

pub use chromatic::{ChromaticError, ChromaticResult};
pub use report::VerificationReport;
pub mod graph;

pub use graph::{ForbiddenFamily, ForbiddenPattern, Graph, GraphError};
mod linalg;
pub mod polytope;

pub use polytope::{LatticePolytope, PolytopeError, Region, Triangulation};
pub mod hodge;

pub use hodge::{HodgeDims, HodgeError};
