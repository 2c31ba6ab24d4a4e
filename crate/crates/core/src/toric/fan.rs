//! The fan type: validation, face fans of lattice polytopes, walls and
//! completeness, with per-cone character solvers cached for intersection
//! theory.

use super::FanError;
use crate::exactmath::{
    det, dot_int, dot_int_rat, invert_rational, primitivize, rat_of, Int, IntMatrix, Rat,
};
use crate::polyhedra::{Cone, Halfspace, Polytope};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// A codimension-one face shared by exactly two maximal cones; the locus of
/// a torus-invariant curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// Indices of the two maximal cones, smaller first.
    pub cone_pair: (usize, usize),
    /// Sorted ray indices spanning the shared facet.
    pub shared_rays: Vec<usize>,
}

/// Solves the per-cone character system `<m, v_j> = -a_j` for a maximal
/// cone, from a prefactored invertible row selection.
#[derive(Clone, Debug)]
pub(super) struct CharacterSolver {
    /// Positions (within the cone's ray list) of the selected rows.
    pivot_positions: Vec<usize>,
    inverse: Vec<Vec<Rat>>,
}

impl CharacterSolver {
    fn build(rays: &[&Vec<Int>], dim: usize) -> CharacterSolver {
        // Greedy selection of `dim` linearly independent rows.
        let mut echelon: Vec<Vec<Rat>> = Vec::new();
        let mut positions = Vec::new();
        for (pos, ray) in rays.iter().enumerate() {
            if positions.len() == dim {
                break;
            }
            let mut v: Vec<Rat> = ray.iter().map(rat_of).collect();
            for row in &echelon {
                let lead = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
                if v[lead].is_zero() {
                    continue;
                }
                let factor = &v[lead] / &row[lead];
                for (vi, ri) in v.iter_mut().zip(row) {
                    let sub = &factor * ri;
                    *vi -= sub;
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                echelon.push(v);
                positions.push(pos);
            }
        }
        assert_eq!(positions.len(), dim, "maximal cone must span the lattice");
        let selected: Vec<Vec<Rat>> = positions
            .iter()
            .map(|&p| rays[p].iter().map(rat_of).collect())
            .collect();
        let inverse = invert_rational(&selected).expect("selected rows are independent");
        CharacterSolver { pivot_positions: positions, inverse }
    }

    /// Character `m` with `<m, v_j> = -a_j` on every ray of the cone, or
    /// None when the restricted system is inconsistent (non-simplicial cone,
    /// divisor not Q-Cartier there).
    pub(super) fn character(&self, cone_rays: &[&Vec<Int>], local_coeffs: &[Rat]) -> Option<Vec<Rat>> {
        let dim = self.inverse.len();
        let rhs: Vec<Rat> = self.pivot_positions.iter().map(|&p| -&local_coeffs[p]).collect();
        let m: Vec<Rat> = (0..dim)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, r) in rhs.iter().enumerate() {
                    acc += &self.inverse[i][j] * r;
                }
                acc
            })
            .collect();
        for (ray, a) in cone_rays.iter().zip(local_coeffs) {
            if dot_int_rat(ray, &m) != -a.clone() {
                return None;
            }
        }
        Some(m)
    }
}

/// A finite collection of pointed rational cones, given by primitive rays
/// and maximal-cone ray index sets. Immutable after validation; derived
/// data (cones, walls, solvers) is cached idempotently.
#[derive(Debug)]
pub struct Fan {
    lattice_dim: usize,
    rays: Vec<Vec<Int>>,
    max_cones: Vec<Vec<usize>>,
    cones: OnceLock<Vec<Cone>>,
    walls: OnceLock<Result<Vec<Wall>, FanError>>,
    solvers: OnceLock<Vec<CharacterSolver>>,
    anticanonical: OnceLock<super::CartierData>,
    class_lattice: OnceLock<Result<super::ClassLattice, FanError>>,
    nef: OnceLock<Result<super::NefCone, FanError>>,
}

impl Clone for Fan {
    fn clone(&self) -> Self {
        Fan {
            lattice_dim: self.lattice_dim,
            rays: self.rays.clone(),
            max_cones: self.max_cones.clone(),
            cones: self.cones.clone(),
            walls: self.walls.clone(),
            solvers: self.solvers.clone(),
            anticanonical: self.anticanonical.clone(),
            class_lattice: self.class_lattice.clone(),
            nef: self.nef.clone(),
        }
    }
}

impl Fan {
    pub fn new(
        lattice_dim: usize,
        rays: Vec<Vec<Int>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan, FanError> {
        if lattice_dim == 0 {
            return Err(FanError::Invalid("lattice dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != lattice_dim {
                return Err(FanError::Invalid(format!(
                    "ray {i} has length {}, expected {lattice_dim}",
                    r.len()
                )));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(FanError::Invalid(format!("ray {i} is zero")));
            }
            let mut copy = r.clone();
            primitivize(&mut copy);
            if &copy != r {
                return Err(FanError::Invalid(format!("ray {i} is not primitive")));
            }
        }
        for (i, r) in rays.iter().enumerate() {
            for (j, s) in rays.iter().enumerate().skip(i + 1) {
                if r == s {
                    return Err(FanError::Invalid(format!("rays {i} and {j} coincide")));
                }
            }
        }
        if max_cones.is_empty() {
            return Err(FanError::Invalid("fan has no maximal cones".into()));
        }
        let mut sorted_cones: Vec<Vec<usize>> = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.iter().enumerate() {
            let mut s = cone.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != cone.len() {
                return Err(FanError::Invalid(format!("maximal cone {c} repeats a ray")));
            }
            if s.is_empty() {
                return Err(FanError::Invalid(format!("maximal cone {c} is empty")));
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::Invalid(format!(
                    "maximal cone {c} references missing ray {bad}"
                )));
            }
            sorted_cones.push(s);
        }
        for (a, ca) in sorted_cones.iter().enumerate() {
            for (b, cb) in sorted_cones.iter().enumerate().skip(a + 1) {
                if ca == cb {
                    return Err(FanError::Invalid(format!("maximal cones {a} and {b} coincide")));
                }
                if ca.iter().all(|i| cb.contains(i)) || cb.iter().all(|i| ca.contains(i)) {
                    return Err(FanError::Invalid(format!(
                        "maximal cones {a} and {b} are nested"
                    )));
                }
            }
        }

        let fan = Fan {
            lattice_dim,
            rays,
            max_cones: sorted_cones,
            cones: OnceLock::new(),
            walls: OnceLock::new(),
            solvers: OnceLock::new(),
            anticanonical: OnceLock::new(),
            class_lattice: OnceLock::new(),
            nef: OnceLock::new(),
        };
        fan.validate_cones()?;
        fan.validate_pairwise_faces()?;
        Ok(fan)
    }

    /// Fan of projective n-space: rays e_1..e_n and -(e_1+..+e_n), maximal
    /// cones all n-subsets.
    pub fn projective_space(n: usize) -> Fan {
        assert!(n >= 1);
        let mut rays: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                e
            })
            .collect();
        rays.push(vec![-Int::one(); n]);
        let max_cones: Vec<Vec<usize>> = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, max_cones).expect("projective space fan is valid")
    }

    /// Product fan on the direct sum of the two lattices.
    pub fn product(a: &Fan, b: &Fan) -> Fan {
        let dim = a.lattice_dim + b.lattice_dim;
        let mut rays: Vec<Vec<Int>> = Vec::with_capacity(a.rays.len() + b.rays.len());
        for r in &a.rays {
            let mut v = r.clone();
            v.extend(std::iter::repeat_with(Int::zero).take(b.lattice_dim));
            rays.push(v);
        }
        for r in &b.rays {
            let mut v = vec![Int::zero(); a.lattice_dim];
            v.extend(r.iter().cloned());
            rays.push(v);
        }
        let mut max_cones = Vec::with_capacity(a.max_cones.len() * b.max_cones.len());
        for ca in &a.max_cones {
            for cb in &b.max_cones {
                let mut s: Vec<usize> = ca.clone();
                s.extend(cb.iter().map(|&i| i + a.rays.len()));
                max_cones.push(s);
            }
        }
        Fan::new(dim, rays, max_cones).expect("product of valid fans is valid")
    }

    /// Face fan of a lattice polytope with the origin strictly inside:
    /// rays are the primitivised vertices, maximal cones the cones over the
    /// facets of the hull.
    pub fn face_fan(lattice_dim: usize, vertices: Vec<Vec<Int>>) -> Result<Fan, FanError> {
        if vertices.is_empty() {
            return Err(FanError::OriginNotInterior);
        }
        for v in &vertices {
            if v.len() != lattice_dim {
                return Err(FanError::Invalid(format!(
                    "vertex has length {}, expected {lattice_dim}",
                    v.len()
                )));
            }
        }
        // Every listed point must actually be a vertex of the hull.
        for i in 0..vertices.len() {
            let others: Vec<Vec<Int>> = vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| {
                    let mut h = v.clone();
                    h.push(Int::one());
                    h
                })
                .collect();
            if others.is_empty() {
                break;
            }
            let mut target = vertices[i].clone();
            target.push(Int::one());
            if crate::optimize::solve_equality_form(&others, &target).is_ok() {
                return Err(FanError::NotAVertex(i));
            }
        }
        // Facets of the hull are the vertices of the polar polytope
        // { y : <v, y> <= 1 }; the polar is bounded iff 0 is interior.
        let halfspaces: Vec<Halfspace> = vertices
            .iter()
            .map(|v| Halfspace::new(v.iter().map(|x| -rat_of(x)).collect(), -Rat::one()))
            .collect();
        let polar = Polytope::from_halfspaces(lattice_dim, halfspaces)
            .expect("polar halfspace dimensions are consistent");
        let polar_vertices = match polar.vertices() {
            Ok(vs) => vs,
            Err(_) => return Err(FanError::OriginNotInterior),
        };
        let mut max_cones: Vec<Vec<usize>> = Vec::new();
        for u in polar_vertices {
            let on_facet: Vec<usize> = (0..vertices.len())
                .filter(|&i| dot_int_rat(&vertices[i], u) == Rat::one())
                .collect();
            max_cones.push(on_facet);
        }
        let rays: Vec<Vec<Int>> = vertices
            .into_iter()
            .map(|mut v| {
                primitivize(&mut v);
                v
            })
            .collect();
        Fan::new(lattice_dim, rays, max_cones)
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice_dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cones(&self) -> &[Cone] {
        self.cones.get_or_init(|| {
            self.max_cones
                .iter()
                .map(|c| {
                    Cone::from_generators(
                        self.lattice_dim,
                        c.iter().map(|&i| self.rays[i].clone()).collect(),
                    )
                    .expect("validated ray vectors")
                })
                .collect()
        })
    }

    pub(super) fn cone_ray_refs(&self, cone_idx: usize) -> Vec<&Vec<Int>> {
        self.max_cones[cone_idx].iter().map(|&i| &self.rays[i]).collect()
    }

    pub(super) fn solvers(&self) -> &[CharacterSolver] {
        self.solvers.get_or_init(|| {
            (0..self.max_cones.len())
                .map(|c| CharacterSolver::build(&self.cone_ray_refs(c), self.lattice_dim))
                .collect()
        })
    }

    fn validate_cones(&self) -> Result<(), FanError> {
        for (c, (indices, cone)) in self.max_cones.iter().zip(self.cones()).enumerate() {
            if !cone.is_pointed() {
                return Err(FanError::Invalid(format!("maximal cone {c} contains a line")));
            }
            // Listed rays must all be extreme: the canonical minimal list
            // has one primitive vector per listed ray.
            if cone.minimal_generators().len() != indices.len() {
                return Err(FanError::Invalid(format!(
                    "maximal cone {c} lists a non-extreme ray"
                )));
            }
        }
        Ok(())
    }

    /// Exact check that each pairwise intersection is a common face. Fast
    /// path: the shared-ray cone must be a face of both, and the sum of the
    /// active facet normals of one cone must be nonpositive on the other.
    /// Falls back to an exact intersection computation when the functional
    /// test is inconclusive.
    fn validate_pairwise_faces(&self) -> Result<(), FanError> {
        let cones = self.cones();
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let shared: Vec<usize> = self.max_cones[a]
                    .iter()
                    .copied()
                    .filter(|i| self.max_cones[b].contains(i))
                    .collect();
                let face_ok = self.is_face_of(&shared, a) && self.is_face_of(&shared, b);
                if !face_ok {
                    return Err(FanError::Invalid(format!(
                        "cones {a} and {b} do not meet in a common face"
                    )));
                }
                if self.functional_separates(&shared, a, b)
                    || self.functional_separates(&shared, b, a)
                {
                    continue;
                }
                // Exact fallback.
                let inter = cones[a].intersection(&cones[b])?;
                let shared_cone = Cone::from_generators(
                    self.lattice_dim,
                    shared.iter().map(|&i| self.rays[i].clone()).collect(),
                )?;
                if !inter.set_eq(&shared_cone) {
                    return Err(FanError::Invalid(format!(
                        "cones {a} and {b} do not meet in a common face"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Is cone(shared ray indices) a face of maximal cone `c`?
    fn is_face_of(&self, shared: &[usize], c: usize) -> bool {
        let cone = &self.cones()[c];
        let active: Vec<&Vec<Int>> = cone
            .facets()
            .iter()
            .filter(|f| shared.iter().all(|&i| dot_int(f, &self.rays[i]).is_zero()))
            .collect();
        // Rays of the minimal face cut out by the active facets.
        let face_rays: Vec<usize> = self.max_cones[c]
            .iter()
            .copied()
            .filter(|&i| active.iter().all(|f| dot_int(f, &self.rays[i]).is_zero()))
            .collect();
        face_rays == shared
    }

    /// Sum of c1's facet normals active on the shared face; separation holds
    /// when it is nonpositive on all generators of c2.
    fn functional_separates(&self, shared: &[usize], c1: usize, c2: usize) -> bool {
        let cone1 = &self.cones()[c1];
        let mut func = vec![Int::zero(); self.lattice_dim];
        for f in cone1.facets() {
            if shared.iter().all(|&i| dot_int(f, &self.rays[i]).is_zero()) {
                for (acc, x) in func.iter_mut().zip(f) {
                    *acc += x;
                }
            }
        }
        self.max_cones[c2]
            .iter()
            .all(|&i| !dot_int(&func, &self.rays[i]).is_positive())
    }

    /// Every codimension-one face shared by exactly two maximal cones.
    /// Errors with NotComplete when a boundary facet exists or some maximal
    /// cone is not full-dimensional.
    pub fn walls(&self) -> Result<&[Wall], FanError> {
        self.walls
            .get_or_init(|| {
                let cones = self.cones();
                for (c, cone) in cones.iter().enumerate() {
                    if cone.span_rank() != self.lattice_dim {
                        return Err(FanError::NotComplete(format!(
                            "maximal cone {c} is not full-dimensional"
                        )));
                    }
                }
                let mut by_ray_set: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
                for (c, cone) in cones.iter().enumerate() {
                    for f in cone.facets() {
                        let on_facet: Vec<usize> = self.max_cones[c]
                            .iter()
                            .copied()
                            .filter(|&i| dot_int(f, &self.rays[i]).is_zero())
                            .collect();
                        by_ray_set.entry(on_facet).or_default().push(c);
                    }
                }
                let mut walls = Vec::new();
                for (rays, mut cs) in by_ray_set {
                    cs.sort_unstable();
                    cs.dedup();
                    match cs.len() {
                        2 => walls.push(Wall {
                            cone_pair: (cs[0], cs[1]),
                            shared_rays: rays,
                        }),
                        1 => {
                            return Err(FanError::NotComplete(format!(
                                "facet {rays:?} of cone {} lies on the boundary of the support",
                                cs[0]
                            )))
                        }
                        _ => {
                            return Err(FanError::Invalid(format!(
                                "facet {rays:?} is shared by more than two maximal cones"
                            )))
                        }
                    }
                }
                Ok(walls)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn is_complete(&self) -> bool {
        self.walls().is_ok()
    }

    /// True iff every maximal cone is simplicial.
    pub fn is_q_factorial(&self) -> bool {
        self.max_cones
            .iter()
            .zip(self.cones())
            .all(|(indices, cone)| indices.len() == cone.span_rank())
    }

    /// Simplicial with unimodular ray bases.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|indices| {
            if indices.len() != self.lattice_dim {
                return false;
            }
            let m = IntMatrix::from_rows(
                &indices.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>(),
            );
            det(&m).abs().is_one()
        })
    }

    pub(super) fn class_lattice_cache(
        &self,
    ) -> &OnceLock<Result<super::ClassLattice, FanError>> {
        &self.class_lattice
    }

    pub(super) fn nef_cache(&self) -> &OnceLock<Result<super::NefCone, FanError>> {
        &self.nef
    }

    pub(super) fn anticanonical_cache(&self) -> &OnceLock<super::CartierData> {
        &self.anticanonical
    }

    /// A lattice point of the second wall cone mapping to the positive
    /// primitive generator of the rank-one quotient by the wall span.
    pub(super) fn wall_curve_point(&self, wall: &Wall) -> Vec<Int> {
        let tau_rows: Vec<Vec<Int>> = wall.shared_rays.iter().map(|&i| self.rays[i].clone()).collect();
        let tau_matrix = if tau_rows.is_empty() {
            // Dimension one: the wall is the origin.
            IntMatrix::zeros(0, self.lattice_dim)
        } else {
            IntMatrix::from_rows(&tau_rows)
        };
        let kernel = crate::exactmath::integer_kernel(&tau_matrix);
        assert_eq!(kernel.len(), 1, "wall must span a hyperplane");
        let mut phi = kernel.into_iter().next().expect("one kernel vector");
        let (_, c2) = wall.cone_pair;
        let outside = self.max_cones[c2]
            .iter()
            .copied()
            .find(|i| !wall.shared_rays.contains(i))
            .expect("maximal cone exceeds its facet");
        if dot_int(&phi, &self.rays[outside]).is_negative() {
            phi = crate::exactmath::neg_vec(&phi);
        }
        let u0 = crate::exactmath::solve_unit_dot(&phi).expect("phi is primitive");
        let mut w_int = vec![Int::zero(); self.lattice_dim];
        for &i in &wall.shared_rays {
            for (acc, x) in w_int.iter_mut().zip(&self.rays[i]) {
                *acc += x;
            }
        }
        // Push u0 into the cone along the relative interior of the wall.
        let mut k = Int::zero();
        for f in self.cones()[c2].facets() {
            let val = dot_int(f, &u0);
            if val.is_negative() {
                let step = dot_int(f, &w_int);
                assert!(step.is_positive(), "wall interior must clear other facets");
                let need = Rat::new(-val, step).ceil().to_integer();
                if need > k {
                    k = need;
                }
            }
        }
        let u: Vec<Int> = u0
            .iter()
            .zip(&w_int)
            .map(|(a, w)| a + &k * w)
            .collect();
        debug_assert!(self.cones()[c2].contains_int(&u));
        debug_assert!(dot_int(&phi, &u).is_one());
        u
    }

    /// Per-cone rational characters for the divisor with the given ray
    /// coefficients; None entries mark cones where the divisor is not
    /// Q-Cartier.
    pub fn cartier_data(&self, coefficients: Vec<Int>) -> super::CartierData {
        assert_eq!(coefficients.len(), self.rays.len());
        let characters: Vec<Option<Vec<Rat>>> = (0..self.max_cones.len())
            .map(|c| {
                let local: Vec<Rat> = self.max_cones[c]
                    .iter()
                    .map(|&i| rat_of(&coefficients[i]))
                    .collect();
                self.solvers()[c].character(&self.cone_ray_refs(c), &local)
            })
            .collect();
        super::CartierData { coefficients, characters }
    }

    /// The canonical anticanonical representative: all coefficients one.
    pub fn anticanonical(&self) -> &super::CartierData {
        self.anticanonical_cache()
            .get_or_init(|| self.cartier_data(vec![Int::one(); self.rays.len()]))
    }
}
