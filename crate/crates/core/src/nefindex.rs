//! Total index of a toric Fano variety: the maximal number of parts (over Z)
//! and the maximal coefficient sum (over Q) of nef partitions of -K, working
//! inside the finite class polytope
//! P_X = lattice points of Nef n (-K - Nef), minus zero.
//!
//! Any part of any nef partition lies in P_X (the part is nef and the sum of
//! the remaining parts is -K minus it), so the restriction loses nothing.

use crate::exactmath::{dot_int, rat_of, Int, Rat};
use crate::optimize::{self, LpError};
use crate::polyhedra::{Cone, Halfspace, Polytope, PolyhedralError};
use crate::toric::{Fan, FanError};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NefIndexError {
    #[error("variety is not Fano: {0}")]
    NotFano(String),
    #[error("anticanonical class is not Cartier on the working class lattice")]
    AnticanonicalNotCartier,
    #[error("no nef partition of -K exists")]
    NoPartition,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// The finite ground set for all nef partitions of -K, in class-lattice
/// coordinates.
#[derive(Clone, Debug)]
pub struct ClassPolytopeData {
    pub class_rank: usize,
    /// Divisor lifts of the class basis vectors (the basis description).
    pub picard_basis: Vec<Vec<Int>>,
    pub nef_cone: Cone,
    pub anticanonical_class: Vec<Int>,
    /// Nonzero lattice points of Nef n (-K - Nef), sorted.
    pub p_x: Vec<Vec<Int>>,
}

/// Counting data for integral nef partitions of -K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauZ {
    /// Maximal number of parts, counted with multiplicity.
    pub value: u64,
    /// Number of unordered two-part integral partitions.
    pub two_part_partitions: u64,
    /// Whether some partition has three or more parts.
    pub has_three_or_more_parts: bool,
}

/// dim + rho - tau_Q with the equality diagnosis of the Mukai-type
/// inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiTypeMargin {
    pub margin: Rat,
    pub equality: bool,
    /// Projective-space factors, when equality holds on a smooth fan.
    pub factors: Option<Vec<usize>>,
}

/// A rational nef partition of -K: positive coefficients on classes from
/// P_X summing to the anticanonical class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefPartition {
    pub parts: Vec<(Vec<Int>, Rat)>,
}

impl NefPartition {
    /// Checks both type invariants against the ground set.
    pub fn verify(&self, data: &ClassPolytopeData) -> bool {
        let mut total = vec![Rat::zero(); data.class_rank];
        for (class, coefficient) in &self.parts {
            if !coefficient.is_positive() || !data.p_x.contains(class) {
                return false;
            }
            for (t, x) in total.iter_mut().zip(class) {
                *t += coefficient * rat_of(x);
            }
        }
        total
            .iter()
            .zip(&data.anticanonical_class)
            .all(|(t, k)| t == &rat_of(k))
    }

    pub fn coefficient_sum(&self) -> Rat {
        self.parts.iter().map(|(_, c)| c.clone()).sum()
    }
}

pub fn class_polytope(fan: &Fan) -> Result<ClassPolytopeData, NefIndexError> {
    match fan.is_fano() {
        Ok(true) => {}
        Ok(false) => {
            return Err(NefIndexError::NotFano(
                "-K is not ample (some invariant curve has nonpositive degree)".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    }
    let lattice = fan.class_lattice()?;
    let kappa = lattice
        .class_of_divisor(&vec![Int::one(); fan.rays().len()])
        .ok_or(NefIndexError::AnticanonicalNotCartier)?;
    let nef = fan.nef_cone()?.cone.clone();
    let p = lattice.class_rank;

    let mut halfspaces = Vec::new();
    for f in nef.facets() {
        let normal: Vec<Rat> = f.iter().map(rat_of).collect();
        halfspaces.push(Halfspace::new(normal.clone(), Rat::zero()));
        // <f, kappa - y> >= 0  <=>  <-f, y> >= -<f, kappa>
        let bound = -Rat::from_integer(dot_int(f, &kappa));
        halfspaces.push(Halfspace::new(normal.iter().map(|x| -x).collect(), bound));
    }
    let truncated = Polytope::from_halfspaces(p, halfspaces)?;
    let mut p_x = truncated.lattice_points()?;
    p_x.retain(|s| !s.iter().all(Zero::is_zero));

    Ok(ClassPolytopeData {
        class_rank: p,
        picard_basis: lattice.basis_lifts().to_vec(),
        nef_cone: nef,
        anticanonical_class: kappa,
        p_x,
    })
}

/// Maximal part count of an integral nef partition of -K, with the counting
/// data the acceptance checks need. Partial sums of parts never leave
/// P_X u {0}, so a memoised search over residuals is exhaustive.
pub fn tau_z(data: &ClassPolytopeData) -> Result<TauZ, NefIndexError> {
    if data.p_x.is_empty() {
        return Err(NefIndexError::NoPartition);
    }
    let members: BTreeSet<&Vec<Int>> = data.p_x.iter().collect();
    let mut memo: HashMap<Vec<Int>, Option<u64>> = HashMap::new();

    fn best_parts(
        residual: &Vec<Int>,
        parts: &[Vec<Int>],
        members: &BTreeSet<&Vec<Int>>,
        memo: &mut HashMap<Vec<Int>, Option<u64>>,
    ) -> Option<u64> {
        if residual.iter().all(Zero::is_zero) {
            return Some(0);
        }
        if let Some(hit) = memo.get(residual) {
            return *hit;
        }
        let mut best: Option<u64> = None;
        for s in parts {
            let rest: Vec<Int> = residual.iter().zip(s).map(|(r, x)| r - x).collect();
            let zero = rest.iter().all(Zero::is_zero);
            if !zero && !members.contains(&rest) {
                continue;
            }
            if let Some(sub) = best_parts(&rest, parts, members, memo) {
                let candidate = sub + 1;
                if best.is_none_or(|b| candidate > b) {
                    best = Some(candidate);
                }
            }
        }
        memo.insert(residual.clone(), best);
        best
    }

    let value = best_parts(&data.anticanonical_class, &data.p_x, &members, &mut memo)
        .ok_or(NefIndexError::NoPartition)?;

    let mut two_part = 0u64;
    for (i, s) in data.p_x.iter().enumerate() {
        for t in &data.p_x[i..] {
            let sum: Vec<Int> = s.iter().zip(t).map(|(a, b)| a + b).collect();
            if sum == data.anticanonical_class {
                two_part += 1;
            }
        }
    }

    Ok(TauZ { value, two_part_partitions: two_part, has_three_or_more_parts: value >= 3 })
}

/// Exact optimum of sum(a) over rational nef partitions of -K with parts in
/// P_X. Always at least tau_Z.
pub fn tau_q(data: &ClassPolytopeData) -> Result<Rat, NefIndexError> {
    let sol = optimize::solve_equality_form(&data.p_x, &data.anticanonical_class)?;
    Ok(sol.value)
}

/// An optimal partition witnessing tau_Q.
pub fn tau_q_partition(data: &ClassPolytopeData) -> Result<NefPartition, NefIndexError> {
    let sol = optimize::solve_equality_form(&data.p_x, &data.anticanonical_class)?;
    let parts = data
        .p_x
        .iter()
        .zip(&sol.argmax)
        .filter(|(_, a)| a.is_positive())
        .map(|(s, a)| (s.clone(), a.clone()))
        .collect();
    Ok(NefPartition { parts })
}

/// dim + rho - tau_Q, with the product-of-projective-spaces cross-check in
/// the equality case on smooth fans.
pub fn mukai_type_margin(
    fan: &Fan,
    data: &ClassPolytopeData,
    tau_q_value: &Rat,
) -> Result<MukaiTypeMargin, NefIndexError> {
    let rho = data.class_rank;
    let margin =
        crate::exactmath::rat((fan.lattice_dim() + rho) as i64) - tau_q_value;
    let equality = margin.is_zero();
    let factors = if equality && fan.is_smooth() {
        crate::toric::recognize_projective_space_product(fan)?
    } else {
        None
    };
    Ok(MukaiTypeMargin { margin, equality, factors })
}
