//! Recognition of products of projective spaces from a smooth complete fan.

use super::{Fan, FanError};
use crate::exactmath::{det, rat_of, solve_rational, Int, IntMatrix, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Returns the factor dimensions (ascending) when the fan is the product of
/// projective-space fans along a direct sum of sublattices, None otherwise.
pub fn recognize_projective_space_product(fan: &Fan) -> Result<Option<Vec<usize>>, FanError> {
    fan.walls()?;
    if !fan.is_smooth() {
        return Err(FanError::NotSmooth);
    }
    let n = fan.lattice_dim();
    let rays = fan.rays();

    // Matroid components of the ray configuration, via fundamental circuits
    // with respect to one greedily chosen ray basis.
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    for (i, ray) in rays.iter().enumerate() {
        if basis.len() == n {
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
            basis.push(i);
        }
    }
    if basis.len() != n {
        return Ok(None);
    }
    let basis_rows: Vec<Vec<Rat>> = (0..n)
        .map(|c| basis.iter().map(|&b| rat_of(&rays[b][c])).collect())
        .collect();

    let mut parent: Vec<usize> = (0..rays.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (i, ray) in rays.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let rhs: Vec<Rat> = ray.iter().map(rat_of).collect();
        let x = solve_rational(&basis_rows, &rhs).expect("basis spans the lattice");
        for (pos, coeff) in x.iter().enumerate() {
            if !coeff.is_zero() {
                let a = find(&mut parent, i);
                let b = find(&mut parent, basis[pos]);
                parent[a] = b;
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..rays.len() {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();

    // Each block must look like a projective-space fan piece: d+1 rays of
    // rank d summing to zero.
    let mut chosen: Vec<Vec<Int>> = Vec::new();
    let mut factors: Vec<usize> = Vec::new();
    for block in &blocks {
        let m = IntMatrix::from_rows(
            &block.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(),
        );
        let rank = crate::exactmath::rank(&m);
        if block.len() != rank + 1 {
            return Ok(None);
        }
        let mut sum = vec![Int::zero(); n];
        for &i in block {
            for (s, x) in sum.iter_mut().zip(&rays[i]) {
                *s += x;
            }
        }
        if !sum.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        for &i in &block[..block.len() - 1] {
            chosen.push(rays[i].clone());
        }
        factors.push(rank);
    }
    // The blocks must split the lattice as a direct sum of unimodular
    // summands.
    if chosen.len() != n || !det(&IntMatrix::from_rows(&chosen)).abs().is_one() {
        return Ok(None);
    }

    // Maximal cones must be exactly the products of the per-factor cones
    // (drop one ray of each block).
    let mut expected: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((b, acc)) = stack.pop() {
        if b == blocks.len() {
            let mut s = acc;
            s.sort_unstable();
            expected.insert(s);
            continue;
        }
        for &skip in &blocks[b] {
            let mut next = acc.clone();
            next.extend(blocks[b].iter().copied().filter(|&i| i != skip));
            stack.push((b + 1, next));
        }
    }
    let actual: BTreeSet<Vec<usize>> = fan.max_cones().iter().cloned().collect();
    if actual != expected {
        return Ok(None);
    }

    factors.sort_unstable();
    Ok(Some(factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_projective_spaces() {
        assert_eq!(
            recognize_projective_space_product(&Fan::projective_space(5)).unwrap(),
            Some(vec![5])
        );
        assert_eq!(
            recognize_projective_space_product(&Fan::projective_space(1)).unwrap(),
            Some(vec![1])
        );
    }

    #[test]
    fn recognizes_products() {
        let p2 = Fan::projective_space(2);
        let p2xp2 = Fan::product(&p2, &p2);
        assert_eq!(
            recognize_projective_space_product(&p2xp2).unwrap(),
            Some(vec![2, 2])
        );
        let mixed = Fan::product(&Fan::projective_space(1), &Fan::projective_space(3));
        assert_eq!(
            recognize_projective_space_product(&mixed).unwrap(),
            Some(vec![1, 3])
        );
    }

    #[test]
    fn rejects_non_products() {
        // Hirzebruch F1: smooth, complete, not a product of projective
        // spaces.
        let f1 = Fan::new(
            2,
            vec![
                crate::exactmath::int_vec(&[1, 0]),
                crate::exactmath::int_vec(&[0, 1]),
                crate::exactmath::int_vec(&[-1, 1]),
                crate::exactmath::int_vec(&[0, -1]),
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        assert_eq!(recognize_projective_space_product(&f1).unwrap(), None);
    }

    #[test]
    fn p1xp1_is_a_product_even_though_rays_resemble_a_cross() {
        let p1p1 = Fan::product(&Fan::projective_space(1), &Fan::projective_space(1));
        assert_eq!(
            recognize_projective_space_product(&p1p1).unwrap(),
            Some(vec![1, 1])
        );
    }

    #[test]
    fn non_smooth_fans_are_rejected() {
        let fan = Fan::new(
            2,
            vec![
                crate::exactmath::int_vec(&[1, 0]),
                crate::exactmath::int_vec(&[0, 1]),
                crate::exactmath::int_vec(&[-1, -3]),
            ],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(
            recognize_projective_space_product(&fan).unwrap_err(),
            FanError::NotSmooth
        );
    }
}
