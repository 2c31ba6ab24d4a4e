//! Hilbert bases of pointed rational cones.
//!
//! Strategy: pull a triangulation of the cone from its extreme rays, collect
//! the lattice points of each simplex's half-open generator parallelepiped
//! together with the rays themselves (a generating set of the monoid), then
//! keep exactly the irreducible elements. For pointed cones that set is the
//! unique minimal generating set.

use super::{Cone, PolyhedralError};
use crate::exactmath::{dot_int, rat_of, solve_rational, Int, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

pub fn hilbert_basis(cone: &Cone) -> Result<Vec<Vec<Int>>, PolyhedralError> {
    if !cone.is_pointed() {
        return Err(PolyhedralError::NotPointed);
    }
    let rays = cone.minimal_generators().to_vec();
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let dim = cone.ambient_dim();

    let mut candidates: BTreeSet<Vec<Int>> = rays.iter().cloned().collect();
    for simplex in triangulate(cone, &rays) {
        let gens: Vec<&Vec<Int>> = simplex.iter().map(|&i| &rays[i]).collect();
        for p in parallelepiped_points(dim, &gens) {
            candidates.insert(p);
        }
    }

    // x is reducible iff x = y + z for nonzero monoid elements y, z. Any such
    // y can be chosen from the candidate set (it contains every irreducible).
    let all: Vec<Vec<Int>> = candidates.iter().cloned().collect();
    let mut basis: Vec<Vec<Int>> = Vec::new();
    'next: for x in &all {
        for y in &all {
            let rest: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            if rest.iter().all(Zero::is_zero) {
                continue;
            }
            if cone.contains_int(&rest) {
                continue 'next;
            }
        }
        basis.push(x.clone());
    }
    Ok(basis)
}

/// Pulling triangulation: index sets (into `rays`) of full-dimensional
/// simplicial subcones covering the cone.
fn triangulate(cone: &Cone, rays: &[Vec<Int>]) -> Vec<Vec<usize>> {
    let indices: Vec<usize> = (0..rays.len()).collect();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    triangulate_rec(cone, rays, &indices, &mut out);
    out.into_iter().collect()
}

fn triangulate_rec(
    cone: &Cone,
    all_rays: &[Vec<Int>],
    members: &[usize],
    out: &mut BTreeSet<Vec<usize>>,
) {
    let span = cone.span_rank();
    if members.len() == span {
        let mut s = members.to_vec();
        s.sort_unstable();
        out.insert(s);
        return;
    }
    let apex = members[0];
    for facet in cone.facets() {
        // Skip invalid faces: equations (zero on the whole cone) and facets
        // through the apex.
        if members.iter().all(|&i| dot_int(facet, &all_rays[i]).is_zero()) {
            continue;
        }
        if dot_int(facet, &all_rays[apex]).is_zero() {
            continue;
        }
        let face_members: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&i| dot_int(facet, &all_rays[i]).is_zero())
            .collect();
        if face_members.is_empty() {
            continue;
        }
        let face_cone = Cone::from_generators(
            cone.ambient_dim(),
            face_members.iter().map(|&i| all_rays[i].clone()).collect(),
        )
        .expect("face generators are valid");
        let mut sub = BTreeSet::new();
        triangulate_rec(&face_cone, all_rays, &face_members, &mut sub);
        for simplex in sub {
            let mut s = simplex;
            s.push(apex);
            s.sort_unstable();
            out.insert(s);
        }
    }
}

/// Integer points of { sum t_i g_i : 0 <= t_i < 1 } minus the origin, for
/// linearly independent generators.
fn parallelepiped_points(dim: usize, gens: &[&Vec<Int>]) -> Vec<Vec<Int>> {
    // Bounding box of the closed parallelepiped.
    let mut lo = vec![Int::zero(); dim];
    let mut hi = vec![Int::zero(); dim];
    for g in gens {
        for (c, x) in g.iter().enumerate() {
            if x.is_negative() {
                lo[c] += x;
            } else {
                hi[c] += x;
            }
        }
    }
    let rows: Vec<Vec<Rat>> = (0..dim)
        .map(|c| gens.iter().map(|g| rat_of(&g[c])).collect())
        .collect();

    let mut out = Vec::new();
    let mut current = lo.clone();
    'scan: loop {
        if current.iter().any(|c| !c.is_zero()) {
            let rhs: Vec<Rat> = current.iter().map(rat_of).collect();
            if let Some(t) = solve_rational(&rows, &rhs) {
                if t.iter().all(|ti| !ti.is_negative() && *ti < Rat::one()) {
                    out.push(current.clone());
                }
            }
        }
        for i in (0..dim).rev() {
            if current[i] < hi[i] {
                current[i] += 1;
                for (j, c) in current.iter_mut().enumerate().skip(i + 1) {
                    *c = lo[j].clone();
                }
                continue 'scan;
            }
        }
        break;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int_vec;

    fn cone_gens(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(dim, gens.iter().map(|g| int_vec(g)).collect()).unwrap()
    }

    #[test]
    fn smooth_cone_basis_is_the_rays() {
        let c = cone_gens(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(hilbert_basis(&c).unwrap(), vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    }

    #[test]
    fn singular_cones_fill_in_interior_generators() {
        let c = cone_gens(2, &[&[1, 0], &[1, 2]]);
        assert_eq!(
            hilbert_basis(&c).unwrap(),
            vec![int_vec(&[1, 0]), int_vec(&[1, 1]), int_vec(&[1, 2])]
        );

        let c = cone_gens(2, &[&[1, 0], &[1, 4]]);
        assert_eq!(
            hilbert_basis(&c).unwrap(),
            vec![
                int_vec(&[1, 0]),
                int_vec(&[1, 1]),
                int_vec(&[1, 2]),
                int_vec(&[1, 3]),
                int_vec(&[1, 4])
            ]
        );
    }

    #[test]
    fn returned_elements_are_irreducible() {
        // Pairwise-sum oracle: no basis element is a sum of two nonzero
        // lattice points of the cone (scan a box around each element).
        let c = cone_gens(2, &[&[1, 0], &[1, 4]]);
        let basis = hilbert_basis(&c).unwrap();
        for x in &basis {
            for a0 in 0..=x[0].clone().try_into().unwrap_or(0i64) {
                for b0 in -8i64..=8 {
                    let y = int_vec(&[a0, b0]);
                    if y.iter().all(|v| v.is_zero()) {
                        continue;
                    }
                    let z: Vec<Int> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
                    if z.iter().all(|v| v.is_zero()) {
                        continue;
                    }
                    assert!(
                        !(c.contains_int(&y) && c.contains_int(&z)),
                        "{x:?} = {y:?} + {z:?} is reducible"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_cone_has_empty_basis() {
        let c = cone_gens(2, &[]);
        assert_eq!(hilbert_basis(&c).unwrap(), Vec::<Vec<Int>>::new());
    }

    #[test]
    fn non_pointed_cone_is_rejected() {
        let c = cone_gens(2, &[&[1, 0], &[-1, 0]]);
        assert_eq!(hilbert_basis(&c).unwrap_err(), PolyhedralError::NotPointed);
    }

    #[test]
    fn cone_over_square_has_all_height_one_points() {
        // Every lattice point at height 1 is irreducible: a decomposition
        // would need a nonzero monoid element at height 0, and the only one
        // is the origin. The edge cones are singular, so the basis is more
        // than rays plus the interior point (0,0,1).
        let c = cone_gens(3, &[&[1, 1, 1], &[1, -1, 1], &[-1, 1, 1], &[-1, -1, 1]]);
        let basis = hilbert_basis(&c).unwrap();
        let mut expect: Vec<Vec<Int>> = Vec::new();
        for x in -1i64..=1 {
            for y in -1i64..=1 {
                expect.push(int_vec(&[x, y, 1]));
            }
        }
        expect.sort();
        assert_eq!(basis, expect);
    }

    #[test]
    fn basis_generates_all_small_lattice_points() {
        // Dynamic-programming generation check up to coordinate bound 10.
        for c in [
            cone_gens(2, &[&[1, 0], &[1, 4]]),
            cone_gens(2, &[&[2, 1], &[1, 3]]),
            cone_gens(3, &[&[1, 1, 1], &[1, -1, 1], &[-1, 1, 1], &[-1, -1, 1]]),
        ] {
            let basis = hilbert_basis(&c).unwrap();
            assert_generates_up_to(&c, &basis, 10);
        }
    }

    pub(crate) fn assert_generates_up_to(c: &Cone, basis: &[Vec<Int>], bound: i64) {
        let dim = c.ambient_dim();
        // Reachable sums inside the box, by BFS over basis additions.
        let in_box = |v: &[Int]| v.iter().all(|x| x.abs() <= Int::from(bound));
        let mut reachable: BTreeSet<Vec<Int>> = BTreeSet::new();
        let mut frontier = vec![vec![Int::zero(); dim]];
        reachable.insert(frontier[0].clone());
        while let Some(p) = frontier.pop() {
            for b in basis {
                let q: Vec<Int> = p.iter().zip(b).map(|(a, x)| a + x).collect();
                if in_box(&q) && reachable.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        // Every cone lattice point in the box must be reachable.
        let mut current = vec![Int::from(-bound); dim];
        'scan: loop {
            if c.contains_int(&current) && !reachable.contains(&current) {
                panic!("{current:?} is not generated by the basis");
            }
            for i in (0..dim).rev() {
                if current[i] < Int::from(bound) {
                    current[i] += 1;
                    for c2 in current.iter_mut().skip(i + 1) {
                        *c2 = Int::from(-bound);
                    }
                    continue 'scan;
                }
            }
            break;
        }
    }
}
