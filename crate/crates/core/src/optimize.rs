//! Exact rational linear programming over bounded polyhedra.
//!
//! `solve` maximises over an H-represented polytope by scanning its exact
//! vertex list (the regions handled here are small, and the scan is its own
//! proof). `solve_equality_form` handles the standard-form program
//! `max sum(a), A a = target, a >= 0` with an exact simplex using Bland's
//! rule, since its coefficient polytopes can have far too many vertices to
//! scan; both routes must and do agree wherever the scan is feasible.

use crate::exactmath::{dot_rat, lex_cmp_rat, rat_of, Int, Rat};
use crate::polyhedra::{Polytope, PolyhedralError};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("objective length {got} does not match ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Maximisation of a linear objective over a bounded polytope.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub feasible: Polytope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rat,
    pub argmax: Vec<Rat>,
    /// True when the argmax is a vertex of the feasible region.
    pub vertex_witness: bool,
}

/// Exact maximum by vertex scan. Ties break to the lexicographically
/// smallest optimal vertex, so results are reproducible.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    if lp.objective.len() != lp.feasible.ambient_dim() {
        return Err(LpError::DimensionMismatch {
            expected: lp.feasible.ambient_dim(),
            got: lp.objective.len(),
        });
    }
    let vertices = lp.feasible.vertices().map_err(|e| match e {
        PolyhedralError::Empty => LpError::Infeasible,
        PolyhedralError::Unbounded => LpError::Unbounded,
        other => panic!("unexpected vertex enumeration failure: {other}"),
    })?;
    let mut best: Option<(Rat, &Vec<Rat>)> = None;
    for v in vertices {
        let value = dot_rat(&lp.objective, v);
        let better = match &best {
            None => true,
            Some((bv, bx)) => match value.cmp(bv) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => lex_cmp_rat(v, bx) == Ordering::Less,
            },
        };
        if better {
            best = Some((value, v));
        }
    }
    let (value, argmax) = best.expect("bounded nonempty polytope has vertices");
    Ok(LpSolution { value, argmax: argmax.clone(), vertex_witness: true })
}

/// max sum(a_i) subject to sum a_i * generators_i = target, a_i >= 0.
///
/// Exact primal simplex on the standard-form tableau. Infeasible when the
/// target is not in the cone of the generators.
pub fn solve_equality_form(generators: &[Vec<Int>], target: &[Int]) -> Result<LpSolution, LpError> {
    assert!(!generators.is_empty(), "generators must be nonempty");
    let dim = target.len();
    for g in generators {
        if g.len() != dim {
            return Err(LpError::DimensionMismatch { expected: dim, got: g.len() });
        }
    }
    let columns: Vec<Vec<Rat>> = generators
        .iter()
        .map(|g| g.iter().map(rat_of).collect())
        .collect();
    let rhs: Vec<Rat> = target.iter().map(rat_of).collect();
    let objective = vec![Rat::one(); generators.len()];
    simplex_max(&columns, &rhs, &objective)
}

/// Standard-form exact simplex: max c.x, [columns] x = b, x >= 0.
/// Bland's rule throughout, so it terminates and is deterministic.
fn simplex_max(columns: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Result<LpSolution, LpError> {
    let m = b.len();
    let n = columns.len();

    // Phase 1 tableau with one artificial variable per row; rows are
    // normalised to b >= 0.
    let total = n + m;
    let mut tab: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let negate = b[i].is_negative();
            let mut row: Vec<Rat> = (0..total)
                .map(|j| {
                    if j < n {
                        let v = columns[j][i].clone();
                        if negate {
                            -v
                        } else {
                            v
                        }
                    } else if j == n + i {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            row.push(if negate { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimise the sum of artificials (maximise its negative).
    let phase1: Vec<Rat> = (0..total)
        .map(|j| if j >= n { -Rat::one() } else { Rat::zero() })
        .collect();
    let p1 = run_simplex(&mut tab, &mut basis, &phase1, n + m)?;
    if !p1.is_zero() {
        return Err(LpError::Infeasible);
    }
    // Drive leftover artificials out of the basis, dropping redundant rows.
    let mut keep_rows: Vec<bool> = vec![true; tab.len()];
    for row in 0..tab.len() {
        if basis[row] < n {
            continue;
        }
        match (0..n).find(|&j| !tab[row][j].is_zero()) {
            Some(j) => pivot(&mut tab, &mut basis, row, j),
            None => keep_rows[row] = false,
        }
    }
    let mut filtered: Vec<Vec<Rat>> = Vec::new();
    let mut filtered_basis: Vec<usize> = Vec::new();
    for (row, keep) in keep_rows.iter().enumerate() {
        if *keep {
            filtered.push(tab[row].clone());
            filtered_basis.push(basis[row]);
        }
    }
    tab = filtered;
    basis = filtered_basis;

    // Phase 2 on the original objective (artificial columns are ignored by
    // restricting the entering-variable search to the first n columns).
    let phase2: Vec<Rat> = (0..total)
        .map(|j| if j < n { c[j].clone() } else { Rat::zero() })
        .collect();
    let value = run_simplex(&mut tab, &mut basis, &phase2, n)?;

    let mut argmax = vec![Rat::zero(); n];
    for (row, &j) in basis.iter().enumerate() {
        if j < n {
            argmax[j] = tab[row][total].clone();
        }
    }
    Ok(LpSolution { value, argmax, vertex_witness: true })
}

/// Runs Bland-rule pivoting to optimality for the given objective.
/// `enter_limit` restricts which columns may enter the basis.
fn run_simplex(
    tab: &mut [Vec<Rat>],
    basis: &mut [usize],
    objective: &[Rat],
    enter_limit: usize,
) -> Result<Rat, LpError> {
    let total = objective.len();
    let rhs_col = total;
    loop {
        // Reduced costs: c_j - c_B . B^{-1} A_j.
        let mut entering: Option<usize> = None;
        for j in 0..enter_limit {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = objective[j].clone();
            for (row, &bj) in basis.iter().enumerate() {
                if objective[bj].is_zero() || tab[row][j].is_zero() {
                    continue;
                }
                let sub = &objective[bj] * &tab[row][j];
                reduced -= sub;
            }
            if reduced.is_positive() {
                entering = Some(j);
                break; // Bland: smallest improving index.
            }
        }
        let Some(j) = entering else {
            let mut value = Rat::zero();
            for (row, &bj) in basis.iter().enumerate() {
                if !objective[bj].is_zero() {
                    value += &objective[bj] * &tab[row][rhs_col];
                }
            }
            return Ok(value);
        };
        // Ratio test; Bland ties break to the smallest basis index.
        let mut leaving: Option<(usize, Rat)> = None;
        for row in 0..tab.len() {
            if !tab[row][j].is_positive() {
                continue;
            }
            let ratio = &tab[row][rhs_col] / &tab[row][j];
            let replace = match &leaving {
                None => true,
                Some((lrow, lratio)) => match ratio.cmp(lratio) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => basis[row] < basis[*lrow],
                },
            };
            if replace {
                leaving = Some((row, ratio));
            }
        }
        let Some((row, _)) = leaving else {
            return Err(LpError::Unbounded);
        };
        pivot(tab, basis, row, j);
    }
}

fn pivot(tab: &mut [Vec<Rat>], basis: &mut [usize], row: usize, col: usize) {
    let width = tab[row].len();
    let inv = tab[row][col].clone();
    for j in 0..width {
        tab[row][j] = &tab[row][j] / &inv;
    }
    for i in 0..tab.len() {
        if i == row || tab[i][col].is_zero() {
            continue;
        }
        let factor = tab[i][col].clone();
        for j in 0..width {
            let sub = &factor * &tab[row][j];
            tab[i][j] -= sub;
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_vec, rat, rat_vec, ratio};
    use crate::polyhedra::{Cone, Halfspace};

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace::new(rat_vec(normal), rat(offset))
    }

    fn conics_region() -> Polytope {
        let q_star = Polytope::from_halfspaces(
            2,
            vec![hs(&[-1, 0], -1), hs(&[2, -1], -1), hs(&[-1, 2], -1)],
        )
        .unwrap();
        let quadrant =
            Cone::from_generators(2, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap();
        q_star.intersect_cone(&quadrant).unwrap()
    }

    #[test]
    fn conics_lp_attains_three_at_1_3() {
        let lp = LinearProgram { objective: rat_vec(&[0, 1]), feasible: conics_region() };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, rat(3));
        assert_eq!(sol.argmax, rat_vec(&[1, 3]));
        assert!(sol.vertex_witness);
    }

    #[test]
    fn zero_objective_gives_zero() {
        let lp = LinearProgram { objective: rat_vec(&[0, 0]), feasible: conics_region() };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, rat(0));
    }

    #[test]
    fn unit_square_corner() {
        let lp = LinearProgram {
            objective: rat_vec(&[1, 1]),
            feasible: Polytope::axis_box(2, 0, 1),
        };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, rat(2));
        assert_eq!(sol.argmax, rat_vec(&[1, 1]));
    }

    #[test]
    fn infeasible_and_unbounded_are_reported() {
        let empty = Polytope::from_halfspaces(1, vec![hs(&[1], 0), hs(&[-1], 1)]).unwrap();
        let lp = LinearProgram { objective: rat_vec(&[1]), feasible: empty };
        assert_eq!(solve(&lp).unwrap_err(), LpError::Infeasible);

        let halfline = Polytope::from_halfspaces(1, vec![hs(&[1], 0)]).unwrap();
        let lp = LinearProgram { objective: rat_vec(&[1]), feasible: halfline };
        assert_eq!(solve(&lp).unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn scaling_objective_preserves_argmax() {
        let region = conics_region();
        let base = solve(&LinearProgram { objective: rat_vec(&[1, 2]), feasible: region.clone() })
            .unwrap();
        let scaled = solve(&LinearProgram {
            objective: vec![ratio(3, 7), ratio(6, 7)],
            feasible: region,
        })
        .unwrap();
        assert_eq!(scaled.argmax, base.argmax);
        assert_eq!(scaled.value, base.value * ratio(3, 7));
    }

    #[test]
    fn redundant_halfspace_changes_nothing() {
        let region = conics_region();
        let mut hs2 = region.halfspaces().to_vec();
        hs2.push(hs(&[-1, -1], -100));
        let padded = Polytope::from_halfspaces(2, hs2).unwrap();
        let objective = rat_vec(&[2, 1]);
        let a = solve(&LinearProgram { objective: objective.clone(), feasible: region }).unwrap();
        let b = solve(&LinearProgram { objective, feasible: padded }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // Maximising x over the unit square: both (1,0) and (1,1) attain 1.
        let lp = LinearProgram {
            objective: rat_vec(&[1, 0]),
            feasible: Polytope::axis_box(2, 0, 1),
        };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.argmax, rat_vec(&[1, 0]));
    }

    #[test]
    fn equality_form_trivial_cases() {
        // {v}, target 3v -> 3
        let sol = solve_equality_form(&[int_vec(&[2, 1])], &int_vec(&[6, 3])).unwrap();
        assert_eq!(sol.value, rat(3));
        assert_eq!(sol.argmax, vec![rat(3)]);

        // {(1,0)}, target (0,1) -> infeasible
        assert_eq!(
            solve_equality_form(&[int_vec(&[1, 0])], &int_vec(&[0, 1])).unwrap_err(),
            LpError::Infeasible
        );
    }

    #[test]
    fn equality_form_prefers_many_small_parts() {
        // target 4 = 4 * 1 beats 2 + 2.
        let sol = solve_equality_form(&[int_vec(&[1]), int_vec(&[2])], &int_vec(&[4])).unwrap();
        assert_eq!(sol.value, rat(4));
        assert_eq!(sol.argmax, vec![rat(4), rat(0)]);
    }

    #[test]
    fn equality_form_agrees_with_vertex_scan() {
        // Cross-check the simplex against the scan on the same program:
        // coefficient polytope { a >= 0, sum a_i g_i = t } scanned directly.
        let generators = vec![int_vec(&[1, 0]), int_vec(&[1, 1]), int_vec(&[0, 1]), int_vec(&[2, 1])];
        let target = int_vec(&[3, 2]);
        let simplex = solve_equality_form(&generators, &target).unwrap();

        let k = generators.len();
        let mut halfspaces = Vec::new();
        for i in 0..k {
            let mut n = vec![Rat::zero(); k];
            n[i] = Rat::one();
            halfspaces.push(Halfspace::new(n, Rat::zero()));
        }
        for c in 0..2 {
            let row: Vec<Rat> = generators.iter().map(|g| rat_of(&g[c])).collect();
            let t = rat_of(&target[c]);
            halfspaces.push(Halfspace::new(row.clone(), t.clone()));
            halfspaces.push(Halfspace::new(row.iter().map(|x| -x).collect(), -t));
        }
        let region = Polytope::from_halfspaces(k, halfspaces).unwrap();
        let scan = solve(&LinearProgram { objective: vec![Rat::one(); k], feasible: region })
            .unwrap();
        assert_eq!(simplex.value, scan.value);
        // The simplex argmax must be feasible and attain the value.
        let mut reconstructed = vec![Rat::zero(); 2];
        for (ai, g) in simplex.argmax.iter().zip(&generators) {
            for c in 0..2 {
                reconstructed[c] += ai * rat_of(&g[c]);
            }
        }
        assert_eq!(reconstructed, rat_vec(&[3, 2]));
        assert_eq!(simplex.argmax.iter().sum::<Rat>(), simplex.value);
    }

    #[test]
    fn equality_form_handles_redundant_rows() {
        // Duplicate constraint rows force redundant-row elimination in
        // phase 1.
        let generators = vec![int_vec(&[1, 2, 2]), int_vec(&[2, 4, 4])];
        let target = int_vec(&[3, 6, 6]);
        let sol = solve_equality_form(&generators, &target).unwrap();
        assert_eq!(sol.value, rat(3));
    }
}
