//! Divisors on complete fans: class group, Cartier data, intersection
//! numbers with invariant wall curves, pseudo-index and the Fano test.

use super::{Fan, FanError, Wall};
use crate::exactmath::{rat_of, smith_normal_form, Int, IntMatrix, Rat};
use num_traits::{One, Signed};

/// The divisor class group of a complete fan, presented by the character
/// relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClassGroup {
    pub ray_count: usize,
    /// One row per character basis vector: row i is (<e_i, v_1>, ..).
    pub relations: IntMatrix,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<Int>,
}

/// A Weil divisor together with its per-cone characters: entry c is the
/// rational vector m with <m, v> = -coefficient on every ray v of maximal
/// cone c, or None when no such vector exists there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierData {
    pub coefficients: Vec<Int>,
    pub characters: Vec<Option<Vec<Rat>>>,
}

impl CartierData {
    /// Characters exist on every maximal cone.
    pub fn is_q_cartier(&self) -> bool {
        self.characters.iter().all(Option::is_some)
    }

    /// Characters exist and are integral on every maximal cone.
    pub fn is_cartier(&self) -> bool {
        self.characters
            .iter()
            .all(|m| m.as_ref().is_some_and(|m| m.iter().all(Rat::is_integer)))
    }
}

impl Fan {
    /// Class group from the Smith normal form of the character relations.
    pub fn class_group(&self) -> Result<DivisorClassGroup, FanError> {
        self.walls()?;
        let n = self.lattice_dim();
        let ray_count = self.rays().len();
        let mut relations = IntMatrix::zeros(n, ray_count);
        for (j, ray) in self.rays().iter().enumerate() {
            for i in 0..n {
                relations[(i, j)] = ray[i].clone();
            }
        }
        let snf = smith_normal_form(&relations);
        let rank = snf.rank();
        debug_assert_eq!(rank, n, "complete fans have full character rank");
        let torsion: Vec<Int> = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(DivisorClassGroup { ray_count, relations, free_rank: ray_count - rank, torsion })
    }

    /// D . V(wall) for a divisor with characters on both wall cones:
    /// the difference of the characters against a lattice point of the
    /// second cone mapping to the primitive quotient generator. On the
    /// projective line this makes O(1) . point = 1.
    pub fn intersect_divisor_curve(
        &self,
        divisor: &CartierData,
        wall: &Wall,
    ) -> Result<Rat, FanError> {
        let (c1, c2) = wall.cone_pair;
        let m1 = divisor.characters[c1].as_ref().ok_or(FanError::NotCartierOnWall)?;
        let m2 = divisor.characters[c2].as_ref().ok_or(FanError::NotCartierOnWall)?;
        let u = self.wall_curve_point(wall);
        let mut acc = Rat::from_integer(Int::ZERO);
        for ((a, b), ui) in m1.iter().zip(m2).zip(&u) {
            acc += (a - b) * rat_of(ui);
        }
        Ok(acc)
    }

    /// min over walls of -K . V(wall). Rational for Q-Gorenstein
    /// non-Gorenstein fans.
    pub fn pseudo_index(&self) -> Result<Rat, FanError> {
        let walls = self.walls()?;
        let antik = self.anticanonical();
        if !antik.is_q_cartier() {
            return Err(FanError::NotQGorenstein);
        }
        let mut best: Option<Rat> = None;
        for wall in walls {
            let deg = self.intersect_divisor_curve(antik, wall)?;
            if best.as_ref().is_none_or(|b| &deg < b) {
                best = Some(deg);
            }
        }
        best.ok_or_else(|| FanError::NotComplete("fan has no walls".into()))
    }

    /// Toric Kleiman criterion on complete fans: ample anticanonical iff
    /// -K . C > 0 for every invariant wall curve C.
    pub fn is_fano(&self) -> Result<bool, FanError> {
        let walls = self.walls()?;
        let antik = self.anticanonical();
        if !antik.is_q_cartier() {
            return Err(FanError::NotQGorenstein);
        }
        for wall in walls {
            if !self.intersect_divisor_curve(antik, wall)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
