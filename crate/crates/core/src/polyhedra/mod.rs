//! Rational convex cones and polytopes with dual descriptions.
//!
//! Cones carry a V-representation (generators) and an H-representation
//! (facet inner normals); either side is computed lazily from the other by
//! the incremental double description method in `dd`. Lines and equations
//! are encoded uniformly as opposite vector pairs, which makes cone duality
//! a pure representation swap.

mod cone;
mod dd;
mod hilbert;
mod polytope;

pub use cone::Cone;
pub use hilbert::hilbert_basis;
pub use polytope::{Halfspace, Polytope};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolyhedralError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("cone is not pointed")]
    NotPointed,
}
