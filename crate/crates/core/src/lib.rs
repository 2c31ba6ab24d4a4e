//! Exact-arithmetic polyhedral toolkit for Mukai-type inequalities.
//!
//! The crate computes the combinatorial invariants entering the generalised
//! Mukai inequality `(iota - 1) * rho <= dim` and its relatives on two kinds
//! of input:
//!
//! * complete rational fans (the toric side: class group, Picard rank,
//!   pseudo-index, nef cone, total index of the anticanonical class), and
//! * spherical divisor records (the `p_tilde` function, its witness divisor
//!   and the resulting upper bound for `(iota - 1) * rho`).
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the pipeline.

pub mod exactmath;
pub mod mukai;
pub mod nefindex;
pub mod optimize;
pub mod polyhedra;
pub mod spherical;
pub mod toric;

pub use exactmath::{Int, IntMatrix, Rat};
pub use polyhedra::{Cone, Polytope};
