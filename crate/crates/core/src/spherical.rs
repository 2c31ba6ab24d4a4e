//! The spherical layer: a divisor record (dimension, rank, the table of
//! invariant divisors and colors with their dual vectors and anticanonical
//! coefficients, and the valuation cone) is enough to build the polytope
//! Q*, the cone T, and to evaluate the p-tilde function with its witness
//! divisor and the induced upper bound for (iota - 1) * rho.

use crate::exactmath::{dot_int_rat, rat, rat_of, Int, Rat};
use crate::optimize::{self, LinearProgram, LpError};
use crate::polyhedra::{Cone, Halfspace, Polytope, PolyhedralError};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SphericalError {
    #[error("invalid record: {0}")]
    Invalid(String),
    #[error("Q* is unbounded: the record does not describe a complete variety")]
    Unbounded,
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// One B-invariant prime divisor: its dual vector, its coefficient in the
/// anticanonical representative, and whether it is a color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalDivisor {
    pub name: String,
    pub rho: Vec<Int>,
    pub m_coeff: Int,
    pub is_color: bool,
}

#[derive(Clone, Debug)]
pub struct SphericalRecord {
    pub dim: usize,
    pub rank: usize,
    pub divisors: Vec<SphericalDivisor>,
    pub valuation_cone: Cone,
}

/// Result of evaluating the p-tilde function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFunctionResult {
    /// dim - rank - sup { sum_D (m_D - 1 + <rho(D), theta>) }.
    pub value: Rat,
    /// The supremum itself (it is attained: Q* is compact).
    pub lp_value: Rat,
    pub argmax_theta: Vec<Rat>,
    /// Coefficients m_D + <rho(D), theta*> of the witness divisor.
    pub witness: Vec<(String, Rat)>,
    /// value < 1 certifies that the variety is toric.
    pub toric_flag: bool,
    pub q_star_vertices: Vec<Vec<Rat>>,
}

/// Report fragment around the inequality (iota - 1) rho <= dim - p_tilde.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiBound {
    pub upper_bound: Rat,
    pub toric_flag: bool,
    pub gamma_note: String,
    pub equality_note: Option<String>,
}

impl SphericalRecord {
    /// Validates the structural invariants and returns the record together
    /// with non-fatal warnings (dual vectors of invariant divisors that are
    /// not visibly inside the valuation cone).
    pub fn new(
        dim: usize,
        rank: usize,
        divisors: Vec<SphericalDivisor>,
        valuation_generators: Vec<Vec<Int>>,
    ) -> Result<(SphericalRecord, Vec<String>), SphericalError> {
        if dim < rank {
            return Err(SphericalError::Invalid(format!(
                "dim {dim} must be at least the rank {rank}"
            )));
        }
        if divisors.is_empty() {
            return Err(SphericalError::Invalid("divisor table is empty".into()));
        }
        for d in &divisors {
            if d.rho.len() != rank {
                return Err(SphericalError::Invalid(format!(
                    "divisor {} has a dual vector of length {}, expected {rank}",
                    d.name,
                    d.rho.len()
                )));
            }
            if !d.m_coeff.is_positive() {
                return Err(SphericalError::Invalid(format!(
                    "divisor {} has nonpositive anticanonical coefficient",
                    d.name
                )));
            }
            if !d.is_color && !d.m_coeff.is_one() {
                return Err(SphericalError::Invalid(format!(
                    "invariant divisor {} must have coefficient 1",
                    d.name
                )));
            }
        }
        let valuation_cone = Cone::from_generators(rank, valuation_generators)?;
        let mut warnings = Vec::new();
        for d in &divisors {
            if !d.is_color && !valuation_cone.contains_int(&d.rho) {
                warnings.push(format!(
                    "dual vector of invariant divisor {} lies outside the valuation cone",
                    d.name
                ));
            }
        }
        Ok((SphericalRecord { dim, rank, divisors, valuation_cone }, warnings))
    }

    /// Q* = intersection over divisors of { v : <rho(D), v> >= -m_D }.
    /// Boundedness doubles as the completeness check.
    pub fn q_star(&self) -> Result<Polytope, SphericalError> {
        let halfspaces: Vec<Halfspace> = self
            .divisors
            .iter()
            .map(|d| {
                Halfspace::new(d.rho.iter().map(rat_of).collect(), -rat_of(&d.m_coeff))
            })
            .collect();
        let p = Polytope::from_halfspaces(self.rank, halfspaces)?;
        match p.vertices() {
            Ok(_) => Ok(p),
            Err(PolyhedralError::Unbounded) => Err(SphericalError::Unbounded),
            Err(e) => Err(e.into()),
        }
    }

    /// T = -(dual of the valuation cone).
    pub fn t_cone(&self) -> Cone {
        self.valuation_cone.dual().negated()
    }

    /// Exact evaluation of the p-tilde function via the linear program over
    /// Q* intersected with T, with objective sum_D rho(D).
    pub fn p_tilde(&self) -> Result<PFunctionResult, SphericalError> {
        let q_star = self.q_star()?;
        let q_star_vertices = q_star.vertices().expect("checked bounded").to_vec();
        let region = q_star.intersect_cone(&self.t_cone())?;
        let mut objective = vec![Rat::zero(); self.rank];
        for d in &self.divisors {
            for (o, r) in objective.iter_mut().zip(&d.rho) {
                *o += rat_of(r);
            }
        }
        // 0 is in Q* (all m_D >= 1) and in the cone T, so this is feasible.
        let sol = optimize::solve(&LinearProgram { objective, feasible: region })?;
        let excess: Rat = self
            .divisors
            .iter()
            .map(|d| rat_of(&d.m_coeff) - Rat::one())
            .sum();
        let lp_value = &excess + &sol.value;
        let value = rat(self.dim as i64) - rat(self.rank as i64) - &lp_value;
        let witness: Vec<(String, Rat)> = self
            .divisors
            .iter()
            .map(|d| {
                (
                    d.name.clone(),
                    rat_of(&d.m_coeff) + dot_int_rat(&d.rho, &sol.argmax),
                )
            })
            .collect();
        debug_assert!(witness.iter().all(|(_, c)| !c.is_negative()));
        let toric_flag = value < Rat::one();
        Ok(PFunctionResult {
            value,
            lp_value,
            argmax_theta: sol.argmax,
            witness,
            toric_flag,
            q_star_vertices,
        })
    }

    /// The certified upper bound dim - p_tilde for (iota - 1) * rho, with
    /// the complexity-chain note and the toric-detection flag. A separately
    /// known value of (iota - 1) * rho can be passed in to surface the
    /// equality case.
    pub fn mukai_bound(
        &self,
        result: &PFunctionResult,
        known_iota_rho: Option<&Rat>,
    ) -> MukaiBound {
        let upper_bound = rat(self.dim as i64) - &result.value;
        let equality_note = known_iota_rho.and_then(|product| {
            (*product == upper_bound).then(|| {
                "supplied (iota-1)*rho attains the certified upper bound".to_string()
            })
        });
        MukaiBound {
            upper_bound,
            toric_flag: result.toric_flag,
            gamma_note: "p_tilde bounds the minimal absolute complexity of a log Calabi-Yau \
                         pair from above (gamma(X) <= p_tilde(X)); p_tilde(X) < 1 only if X \
                         is isomorphic to a toric variety"
                .to_string(),
            equality_note,
        }
    }

    /// #divisors - rank: the class-group rank of the record.
    pub fn class_rank(&self) -> usize {
        self.divisors.len() - self.rank.min(self.divisors.len())
    }
}

/// Wire format for spherical records.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SphericalRecordFile {
    pub dim: usize,
    pub rank: usize,
    pub divisors: Vec<SphericalDivisorFile>,
    pub valuation_cone_generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SphericalDivisorFile {
    pub name: String,
    pub rho: Vec<i64>,
    pub m: i64,
    pub color: bool,
}

impl SphericalRecordFile {
    pub fn into_record(self) -> Result<(SphericalRecord, Vec<String>), SphericalError> {
        let divisors = self
            .divisors
            .into_iter()
            .map(|d| SphericalDivisor {
                name: d.name,
                rho: d.rho.into_iter().map(Int::from).collect(),
                m_coeff: Int::from(d.m),
                is_color: d.color,
            })
            .collect();
        let generators = self
            .valuation_cone_generators
            .into_iter()
            .map(|g| g.into_iter().map(Int::from).collect())
            .collect();
        SphericalRecord::new(self.dim, self.rank, divisors, generators)
    }
}
