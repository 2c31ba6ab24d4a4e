//! Complete rational fans and the toric dictionary: divisors, class group,
//! Picard lattice, nef cone, intersection numbers with invariant curves,
//! pseudo-index, Fano tests, reflexive-polytope face fans and recognition of
//! products of projective spaces.

mod classes;
mod divisor;
mod fan;
mod product;

pub use classes::{ClassLattice, NefCone};
pub use divisor::{CartierData, DivisorClassGroup};
pub use fan::{Fan, Wall};
pub use product::recognize_projective_space_product;

use crate::exactmath::Int;
use crate::polyhedra::PolyhedralError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FanError {
    #[error("invalid fan: {0}")]
    Invalid(String),
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("anticanonical divisor is not Q-Cartier")]
    NotQGorenstein,
    #[error("divisor is not Cartier on a cone of the wall")]
    NotCartierOnWall,
    #[error("variety is not Fano: {0}")]
    NotFano(String),
    #[error("origin is not strictly interior to the polytope")]
    OriginNotInterior,
    #[error("input point {0} is not a vertex of its convex hull")]
    NotAVertex(usize),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
}

/// Wire format for fans: either explicit rays and maximal cones, or a
/// vertex list for the face-fan construction.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanFile {
    pub lattice_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_polytope: Option<Vec<Vec<i64>>>,
}

impl FanFile {
    pub fn into_fan(self) -> Result<Fan, FanError> {
        let to_int = |vs: Vec<Vec<i64>>| -> Vec<Vec<Int>> {
            vs.into_iter()
                .map(|v| v.into_iter().map(Int::from).collect())
                .collect()
        };
        match (self.rays, self.max_cones, self.from_polytope) {
            (None, None, Some(vertices)) => Fan::face_fan(self.lattice_dim, to_int(vertices)),
            (Some(rays), Some(cones), None) => Fan::new(self.lattice_dim, to_int(rays), cones),
            (_, _, Some(_)) => Err(FanError::Invalid(
                "from_polytope excludes explicit rays/max_cones".into(),
            )),
            _ => Err(FanError::Invalid(
                "a fan file needs either rays plus max_cones, or from_polytope".into(),
            )),
        }
    }

    pub fn from_fan(fan: &Fan) -> FanFile {
        FanFile {
            lattice_dim: fan.lattice_dim(),
            rays: Some(
                fan.rays()
                    .iter()
                    .map(|r| r.iter().map(|x| i64::try_from(x).expect("small ray entries")).collect())
                    .collect(),
            ),
            max_cones: Some(fan.max_cones().to_vec()),
            from_polytope: None,
        }
    }
}
