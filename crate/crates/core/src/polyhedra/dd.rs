//! Incremental double description over exact integers.
//!
//! Input: homogeneous constraints `{ x : <a_i, x> >= 0 }`. Output: a minimal
//! generator description (lineality basis + extreme rays of the pointed
//! quotient). Each constraint is processed either by cutting the lineality
//! space (when it is not orthogonal to it) or by the classical ray-splitting
//! step with the combinatorial adjacency test.

use crate::exactmath::{dot_int, hermite_basis, neg_vec, primitivize, rat_of, Int, Rat};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, Default)]
pub(crate) struct ZeroSet {
    words: Vec<u64>,
}

impl ZeroSet {
    fn with_capacity(bits: usize) -> Self {
        ZeroSet { words: vec![0; bits.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &ZeroSet) -> ZeroSet {
        let n = self.words.len().min(other.words.len());
        ZeroSet { words: (0..n).map(|i| self.words[i] & other.words[i]).collect() }
    }

    fn contains_all(&self, other: &ZeroSet) -> bool {
        for (i, w) in other.words.iter().enumerate() {
            let own = self.words.get(i).copied().unwrap_or(0);
            if own & w != *w {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<Int>,
    zero: ZeroSet,
}

/// Minimal generator description of `{ x : <a, x> >= 0 for all constraints }`.
#[derive(Clone, Debug)]
pub(crate) struct DdCone {
    pub lineality: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
}

pub(crate) fn double_description(dim: usize, constraints: &[Vec<Int>]) -> DdCone {
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if a.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.zero.insert(k);
            }
            continue;
        }
        if let Some(i0) = lineality.iter().position(|l| !dot_int(a, l).is_zero()) {
            // The constraint cuts the lineality space: one basis vector
            // becomes a ray, the rest are projected into the hyperplane.
            let mut l0 = lineality.swap_remove(i0);
            let mut p0 = dot_int(a, &l0);
            if p0.is_negative() {
                l0 = neg_vec(&l0);
                p0 = -p0;
            }
            for l in lineality.iter_mut() {
                let p = dot_int(a, l);
                if !p.is_zero() {
                    *l = combine(&p0, l, &p, &l0);
                    primitivize(l);
                }
            }
            for r in rays.iter_mut() {
                let p = dot_int(a, &r.v);
                if !p.is_zero() {
                    r.v = combine(&p0, &r.v, &p, &l0);
                    primitivize(&mut r.v);
                }
                r.zero.insert(k);
            }
            let mut zero = ZeroSet::with_capacity(constraints.len());
            for j in 0..k {
                zero.insert(j);
            }
            rays.push(Ray { v: l0, zero });
        } else {
            // Classical step: split rays against the hyperplane.
            let products: Vec<Int> = rays.iter().map(|r| dot_int(a, &r.v)).collect();
            let mut next: Vec<Ray> = Vec::new();
            for (r, p) in rays.iter().zip(&products) {
                if !p.is_negative() {
                    let mut r = r.clone();
                    if p.is_zero() {
                        r.zero.insert(k);
                    }
                    next.push(r);
                }
            }
            for (ip, pp) in products.iter().enumerate() {
                if !pp.is_positive() {
                    continue;
                }
                for (im, pm) in products.iter().enumerate() {
                    if !pm.is_negative() {
                        continue;
                    }
                    let common = rays[ip].zero.intersection(&rays[im].zero);
                    if !adjacent(&rays, ip, im, &common) {
                        continue;
                    }
                    // pp * v_minus - pm * v_plus: nonnegative combination
                    // lying on the hyperplane.
                    let mut v = combine(pp, &rays[im].v, pm, &rays[ip].v);
                    if !primitivize(&mut v) {
                        continue;
                    }
                    let mut zero = common;
                    zero.insert(k);
                    next.push(Ray { v, zero });
                }
            }
            rays = next;
        }
    }

    DdCone {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

/// c1 * v1 - c2 * v2
fn combine(c1: &Int, v1: &[Int], c2: &Int, v2: &[Int]) -> Vec<Int> {
    v1.iter().zip(v2).map(|(x, y)| c1 * x - c2 * y).collect()
}

/// Combinatorial adjacency: no third extreme ray's zero set contains the
/// common zero set of the pair.
fn adjacent(rays: &[Ray], ip: usize, im: usize, common: &ZeroSet) -> bool {
    for (i, r) in rays.iter().enumerate() {
        if i == ip || i == im {
            continue;
        }
        if r.zero.contains_all(common) {
            return false;
        }
    }
    true
}

/// Canonical vector list for a generator description: the lineality lattice
/// in Hermite form contributes opposite pairs, extreme rays are reduced
/// modulo the lineality pivots, primitivised, and the whole list is sorted.
pub(crate) fn canonical_vector_list(dim: usize, dd: &DdCone) -> Vec<Vec<Int>> {
    let lin = hermite_basis(&dd.lineality);
    let pivots: Vec<usize> = lin
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero basis row"))
        .collect();

    let mut out: Vec<Vec<Int>> = Vec::new();
    for l in &lin {
        out.push(l.clone());
        out.push(neg_vec(l));
    }
    for r in &dd.rays {
        let mut v: Vec<Rat> = r.iter().map(rat_of).collect();
        for (l, &p) in lin.iter().zip(&pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = &v[p] / rat_of(&l[p]);
            for (vi, li) in v.iter_mut().zip(l) {
                let sub = &factor * rat_of(li);
                *vi -= sub;
            }
        }
        if let Some(prim) = crate::exactmath::primitive_from_rat(&v) {
            out.push(prim);
        }
    }
    debug_assert_eq!(out.iter().filter(|v| v.len() != dim).count(), 0);
    out.sort();
    out.dedup();
    out
}
