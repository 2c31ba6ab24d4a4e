//! Rational polyhedral cones with lazily computed dual descriptions.

use super::dd::{canonical_vector_list, double_description};
use super::PolyhedralError;
use crate::exactmath::{
    dot_int, dot_int_rat, neg_vec, primitivize, rank, Int, IntMatrix, Rat,
};
use num_traits::Signed;
use std::sync::OnceLock;

/// A closed convex rational cone. Vectors are stored primitive; lines and
/// equations appear as opposite vector pairs, so the same vector-list shape
/// serves for both representations and `dual` is a representation swap.
#[derive(Debug, Default)]
pub struct Cone {
    ambient_dim: usize,
    generators: OnceLock<Vec<Vec<Int>>>,
    facets: OnceLock<Vec<Vec<Int>>>,
    minimal_generators: OnceLock<Vec<Vec<Int>>>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            ambient_dim: self.ambient_dim,
            generators: self.generators.clone(),
            facets: self.facets.clone(),
            minimal_generators: self.minimal_generators.clone(),
        }
    }
}

fn clean_vectors(dim: usize, mut vs: Vec<Vec<Int>>) -> Result<Vec<Vec<Int>>, PolyhedralError> {
    for v in &vs {
        if v.len() != dim {
            return Err(PolyhedralError::DimensionMismatch { expected: dim, got: v.len() });
        }
    }
    vs.retain_mut(|v| primitivize(v));
    vs.sort();
    vs.dedup();
    Ok(vs)
}

impl Cone {
    pub fn from_generators(
        ambient_dim: usize,
        generators: Vec<Vec<Int>>,
    ) -> Result<Cone, PolyhedralError> {
        let cone = Cone { ambient_dim, ..Default::default() };
        let _ = cone.generators.set(clean_vectors(ambient_dim, generators)?);
        Ok(cone)
    }

    pub fn from_facets(ambient_dim: usize, facets: Vec<Vec<Int>>) -> Result<Cone, PolyhedralError> {
        let cone = Cone { ambient_dim, ..Default::default() };
        let _ = cone.facets.set(clean_vectors(ambient_dim, facets)?);
        Ok(cone)
    }

    /// The full ambient space.
    pub fn full_space(ambient_dim: usize) -> Cone {
        Cone::from_facets(ambient_dim, Vec::new()).expect("no vectors to validate")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Generator list: as constructed, or the canonical minimal list when
    /// this cone was built from facets.
    pub fn generators(&self) -> &[Vec<Int>] {
        if let Some(g) = self.generators.get() {
            return g;
        }
        self.minimal_generators()
    }

    /// Facet inner normals (canonical minimal H-representation).
    pub fn facets(&self) -> &[Vec<Int>] {
        self.facets.get_or_init(|| {
            let gens = self
                .generators
                .get()
                .expect("cone must carry at least one representation");
            let dd = double_description(self.ambient_dim, gens);
            canonical_vector_list(self.ambient_dim, &dd)
        })
    }

    /// Canonical minimal generator list (extreme rays, with lines as
    /// opposite pairs), derived from the facets.
    pub fn minimal_generators(&self) -> &[Vec<Int>] {
        self.minimal_generators.get_or_init(|| {
            let facets = self.facets();
            let dd = double_description(self.ambient_dim, facets);
            canonical_vector_list(self.ambient_dim, &dd)
        })
    }

    /// { y : <y, x> >= 0 for all x in self }.
    pub fn dual(&self) -> Cone {
        Cone::from_generators(self.ambient_dim, self.facets().to_vec())
            .expect("facet vectors are valid")
    }

    /// Pointwise negation of the cone.
    pub fn negated(&self) -> Cone {
        let gens = self.generators().iter().map(|g| neg_vec(g)).collect();
        Cone::from_generators(self.ambient_dim, gens).expect("generator vectors are valid")
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        self.facets().iter().all(|f| !dot_int(f, v).is_negative())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        self.facets().iter().all(|f| !dot_int_rat(f, v).is_negative())
    }

    /// Dimension of the linear span.
    pub fn span_rank(&self) -> usize {
        let gens = self.generators();
        if gens.is_empty() {
            return 0;
        }
        rank(&IntMatrix::from_rows(gens))
    }

    /// Dimension of the largest linear subspace contained in the cone.
    pub fn lineality_rank(&self) -> usize {
        let facets = self.facets();
        if facets.is_empty() {
            return self.ambient_dim;
        }
        self.ambient_dim - rank(&IntMatrix::from_rows(facets))
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_rank() == 0
    }

    pub fn is_full_space(&self) -> bool {
        self.facets().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.minimal_generators().is_empty()
    }

    /// Whether the given ray index set of `generators()` consists of
    /// positively independent vectors is not tracked here; cones compare as
    /// point sets via their canonical descriptions.
    pub fn set_eq(&self, other: &Cone) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.minimal_generators() == other.minimal_generators()
    }

    /// Intersection, by merging facet lists.
    pub fn intersection(&self, other: &Cone) -> Result<Cone, PolyhedralError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(PolyhedralError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut facets = self.facets().to_vec();
        facets.extend(other.facets().iter().cloned());
        Cone::from_facets(self.ambient_dim, facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_vec, rat_vec};

    fn cone_gens(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(dim, gens.iter().map(|g| int_vec(g)).collect()).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = cone_gens(2, &[&[1, 0], &[0, 1]]);
        let d = c.dual();
        assert!(c.set_eq(&d));
    }

    #[test]
    fn negative_quadrant_dual() {
        // dual of cone((-1,0),(0,-1)) is the nonpositive orthant, so its
        // negation is the nonnegative orthant.
        let v = cone_gens(2, &[&[-1, 0], &[0, -1]]);
        let t = v.dual().negated();
        assert!(t.set_eq(&cone_gens(2, &[&[1, 0], &[0, 1]])));
    }

    #[test]
    fn ray_dual_is_halfplane() {
        let c = cone_gens(2, &[&[1, 0]]);
        let d = c.dual();
        // Membership oracle on a grid: y in dual iff <y, (1,0)> >= 0.
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let p = rat_vec(&[x, y]);
                assert_eq!(d.contains_rat(&p), x >= 0, "grid point ({x},{y})");
            }
        }
        assert_eq!(d.lineality_rank(), 1);
        assert!(!d.is_pointed());
    }

    #[test]
    fn double_dual_is_identity_on_canonical_form() {
        let cones = [
            cone_gens(2, &[&[1, 0], &[0, 1], &[1, 1]]),
            cone_gens(2, &[&[1, 0]]),
            cone_gens(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
            cone_gens(2, &[&[1, 0], &[-1, 0], &[0, 1]]),
            Cone::full_space(3),
            cone_gens(2, &[]),
        ];
        for c in &cones {
            let dd = c.dual().dual();
            assert!(c.set_eq(&dd));
            assert_eq!(c.minimal_generators(), dd.minimal_generators());
        }
    }

    #[test]
    fn v_to_h_to_v_round_trip() {
        // Redundant generator is dropped by the canonical form.
        let c = cone_gens(2, &[&[1, 0], &[1, 1], &[0, 1]]);
        let minimal = c.minimal_generators();
        assert_eq!(minimal, &[int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn zero_cone_is_pointed_and_empty() {
        let c = cone_gens(2, &[]);
        assert!(c.is_pointed());
        assert!(c.is_zero());
        assert_eq!(c.facets().len(), 4);
    }

    #[test]
    fn full_space_dual_is_zero() {
        let f = Cone::full_space(2);
        assert!(f.dual().is_zero());
        assert_eq!(f.lineality_rank(), 2);
    }

    #[test]
    fn concurrent_lazy_fill_is_safe() {
        let c = std::sync::Arc::new(cone_gens(3, &[&[1, 0, 0], &[1, 2, 0], &[1, 0, 3]]));
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let c = c.clone();
                std::thread::spawn(move || (c.facets().len(), c.minimal_generators().len()))
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
