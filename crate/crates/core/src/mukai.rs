//! The report orchestrator: a single MukaiReport from either a complete fan or
//! a spherical divisor record, with every numeric field tagged by the
//! definition it was computed from, a stable JSON rendering and a plain-text
//! rendering.

use crate::exactmath::{rat, rat_serde, Rat};
use crate::nefindex::{self, NefIndexError};
use crate::spherical::{SphericalError, SphericalRecord};
use crate::toric::{recognize_projective_space_product, Fan, FanError};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ReportError {
    #[error(transparent)]
    Toric(#[from] FanError),
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    NefIndex(#[from] NefIndexError),
    /// The Mukai inequality failed on input where it is a theorem; this
    /// signals a bug in the input data or the implementation, never a
    /// mathematical discovery.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MukaiFlags {
    pub q_factorial: Option<bool>,
    pub gorenstein: Option<bool>,
    pub fano: Option<bool>,
    pub toric_detected: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessEntry {
    pub name: String,
    #[serde(with = "rat_serde")]
    pub coefficient: Rat,
}

/// Fields populated only for fan inputs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ToricSection {
    pub ray_count: usize,
    pub max_cone_count: usize,
    pub wall_count: usize,
    pub smooth: bool,
    pub class_torsion: Vec<String>,
    pub nef_extreme_ray_count: Option<usize>,
    pub p_x_size: Option<usize>,
    pub two_part_partitions: Option<u64>,
    pub has_three_or_more_part_partition: Option<bool>,
    #[serde(with = "rat_serde::option")]
    pub mukai_type_margin: Option<Rat>,
    pub mukai_type_equality: Option<bool>,
    /// Factors witnessing dim + rho - tau_Q = 0 on a smooth fan.
    pub mukai_type_factors: Option<Vec<usize>>,
}

/// Fields populated only for spherical records.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SphericalSection {
    pub divisor_count: usize,
    pub rank: usize,
    #[serde(with = "rat_serde::mat")]
    pub q_star_vertices: Vec<Vec<Rat>>,
    #[serde(with = "rat_serde")]
    pub lp_value: Rat,
    #[serde(with = "rat_serde::vec")]
    pub argmax_theta: Vec<Rat>,
    pub witness_divisor: Vec<WitnessEntry>,
    pub gamma_note: String,
    pub equality_note: Option<String>,
    pub warnings: Vec<String>,
}

/// All computed invariants of one input, with provenance of each field in
/// `derivations`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MukaiReport {
    pub dim: usize,
    pub picard_rank: Option<usize>,
    pub class_rank: Option<usize>,
    #[serde(with = "rat_serde::option")]
    pub pseudo_index: Option<Rat>,
    #[serde(with = "rat_serde::option")]
    pub p_tilde: Option<Rat>,
    pub tau_z: Option<u64>,
    #[serde(with = "rat_serde::option")]
    pub tau_q: Option<Rat>,
    #[serde(with = "rat_serde::option")]
    pub mukai_lhs: Option<Rat>,
    pub mukai_rhs: usize,
    #[serde(with = "rat_serde::option")]
    pub margin: Option<Rat>,
    #[serde(with = "rat_serde::option")]
    pub mukai_upper_bound: Option<Rat>,
    pub equality_case: Option<Vec<usize>>,
    pub flags: MukaiFlags,
    pub derivations: BTreeMap<String, String>,
    pub toric: Option<ToricSection>,
    pub spherical: Option<SphericalSection>,
}

impl MukaiReport {
    /// Stable pretty JSON; identical inputs produce byte-identical output.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("dim                = {}", self.dim));
        if let Some(v) = self.picard_rank {
            line(format!("picard_rank        = {v}"));
        }
        if let Some(v) = self.class_rank {
            line(format!("class_rank         = {v}"));
        }
        if let Some(v) = &self.pseudo_index {
            line(format!("pseudo_index       = {v}"));
        }
        if let Some(v) = &self.p_tilde {
            line(format!("p_tilde            = {v}"));
        }
        if let Some(v) = self.tau_z {
            line(format!("tau_Z              = {v}"));
        }
        if let Some(v) = &self.tau_q {
            line(format!("tau_Q              = {v}"));
        }
        if let Some(v) = &self.mukai_lhs {
            line(format!("(iota-1)*rho       = {v} (bound {})", self.mukai_rhs));
        }
        if let Some(v) = &self.margin {
            line(format!("margin             = {v}"));
        }
        if let Some(v) = &self.mukai_upper_bound {
            line(format!("upper bound for (iota-1)*rho = {v}"));
        }
        if let Some(factors) = &self.equality_case {
            let fs: Vec<String> = factors.iter().map(|n| format!("P^{n}")).collect();
            line(format!("equality case      = {}", fs.join(" x ")));
        }
        let flag = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        line(format!(
            "flags: q_factorial={} gorenstein={} fano={} toric_detected={}",
            flag(self.flags.q_factorial),
            flag(self.flags.gorenstein),
            flag(self.flags.fano),
            flag(self.flags.toric_detected)
        ));
        if let Some(s) = &self.spherical {
            let vs: Vec<String> = s
                .q_star_vertices
                .iter()
                .map(|v| {
                    let cs: Vec<String> = v.iter().map(ToString::to_string).collect();
                    format!("({})", cs.join(", "))
                })
                .collect();
            line(format!("Q* vertices        = {}", vs.join(" ")));
            let theta: Vec<String> = s.argmax_theta.iter().map(ToString::to_string).collect();
            line(format!("theta*             = ({})", theta.join(", ")));
            let witness: Vec<String> = s
                .witness_divisor
                .iter()
                .filter(|w| !w.coefficient.is_zero())
                .map(|w| format!("{}*{}", w.coefficient, w.name))
                .collect();
            line(format!(
                "witness divisor    = {}",
                if witness.is_empty() { "0".to_string() } else { witness.join(" + ") }
            ));
            for w in &s.warnings {
                line(format!("warning: {w}"));
            }
        }
        if let Some(t) = &self.toric {
            line(format!(
                "fan: {} rays, {} maximal cones, {} walls, smooth={}",
                t.ray_count,
                t.max_cone_count,
                t.wall_count,
                if t.smooth { "yes" } else { "no" }
            ));
            if let Some(n) = t.nef_extreme_ray_count {
                line(format!("nef cone extreme rays = {n}"));
            }
            if let Some(n) = t.p_x_size {
                line(format!("|P_X|              = {n}"));
            }
            if let Some(n) = t.two_part_partitions {
                line(format!("two-part partitions of -K = {n}"));
            }
            if let Some(m) = &t.mukai_type_margin {
                line(format!("dim + rho - tau_Q  = {m}"));
            }
        }
        out
    }
}

fn flag_derivations() -> BTreeMap<String, String> {
    BTreeMap::new()
}

/// Full toric report: class group, Picard rank, pseudo-index, Fano test,
/// Mukai margin, and (for Gorenstein Fano input) the total-index data.
pub fn report_fan(fan: &Fan) -> Result<MukaiReport, ReportError> {
    let dim = fan.lattice_dim();
    let class_group = fan.class_group()?;
    let q_factorial = fan.is_q_factorial();
    let picard_rank = fan.picard_rank()?;
    let antik = fan.anticanonical();
    if !antik.is_q_cartier() {
        return Err(FanError::NotQGorenstein.into());
    }
    let gorenstein = antik.is_cartier();
    let pseudo_index = fan.pseudo_index()?;
    let fano = fan.is_fano()?;
    let smooth = fan.is_smooth();

    let mukai_lhs = (&pseudo_index - rat(1)) * rat(picard_rank as i64);
    let margin = rat(dim as i64) - &mukai_lhs;
    if fano && q_factorial && margin < rat(0) {
        return Err(ReportError::Inconsistent(format!(
            "(iota-1)*rho = {mukai_lhs} exceeds dim = {dim} on a Q-factorial Fano input"
        )));
    }

    let mut derivations = flag_derivations();
    derivations.insert(
        "class_rank".into(),
        "ray count minus lattice dimension (Smith normal form of the character relations)".into(),
    );
    derivations.insert(
        "picard_rank".into(),
        "rank of the integral Cartier divisor lattice modulo characters".into(),
    );
    derivations.insert(
        "pseudo_index".into(),
        "minimum of -K.C over torus-invariant wall curves".into(),
    );
    derivations.insert("mukai_lhs".into(), "(pseudo_index - 1) * picard_rank".into());
    derivations.insert("margin".into(), "dim - (pseudo_index - 1) * picard_rank".into());

    let mut report = MukaiReport {
        dim,
        picard_rank: Some(picard_rank),
        class_rank: Some(class_group.free_rank),
        pseudo_index: Some(pseudo_index),
        p_tilde: None,
        tau_z: None,
        tau_q: None,
        mukai_lhs: Some(mukai_lhs.clone()),
        mukai_rhs: dim,
        margin: Some(margin.clone()),
        mukai_upper_bound: None,
        equality_case: None,
        flags: MukaiFlags {
            q_factorial: Some(q_factorial),
            gorenstein: Some(gorenstein),
            fano: Some(fano),
            toric_detected: Some(true),
        },
        derivations,
        toric: Some(ToricSection {
            ray_count: fan.rays().len(),
            max_cone_count: fan.max_cones().len(),
            wall_count: fan.walls()?.len(),
            smooth,
            class_torsion: class_group.torsion.iter().map(ToString::to_string).collect(),
            nef_extreme_ray_count: None,
            p_x_size: None,
            two_part_partitions: None,
            has_three_or_more_part_partition: None,
            mukai_type_margin: None,
            mukai_type_equality: None,
            mukai_type_factors: None,
        }),
        spherical: None,
    };

    if smooth && margin.is_zero() {
        let factors = recognize_projective_space_product(fan)?;
        if factors.is_none() && fano {
            return Err(ReportError::Inconsistent(
                "Mukai equality case on a smooth Fano fan that is not a product of projective \
                 spaces"
                    .into(),
            ));
        }
        report.equality_case = factors;
    }

    if fano && gorenstein {
        let data = nefindex::class_polytope(fan)?;
        let tz = nefindex::tau_z(&data)?;
        let tq = nefindex::tau_q(&data)?;
        let type_margin = nefindex::mukai_type_margin(fan, &data, &tq)?;
        report.tau_z = Some(tz.value);
        report.tau_q = Some(tq);
        report.derivations.insert(
            "tau_z".into(),
            "maximum part count of an integral nef partition of -K inside P_X".into(),
        );
        report.derivations.insert(
            "tau_q".into(),
            "maximum of sum(a) over rational nef partitions sum(a_i S_i) = -K with S_i in P_X"
                .into(),
        );
        report.derivations.insert(
            "mukai_type_margin".into(),
            "dim + picard_rank - tau_q".into(),
        );
        let toric = report.toric.as_mut().expect("toric section present");
        toric.nef_extreme_ray_count = Some(data.nef_cone.minimal_generators().len());
        toric.p_x_size = Some(data.p_x.len());
        toric.two_part_partitions = Some(tz.two_part_partitions);
        toric.has_three_or_more_part_partition = Some(tz.has_three_or_more_parts);
        toric.mukai_type_margin = Some(type_margin.margin.clone());
        toric.mukai_type_equality = Some(type_margin.equality);
        toric.mukai_type_factors = type_margin.factors;
    }

    Ok(report)
}

/// Spherical report: p-tilde, witness divisor, the certified upper bound
/// for (iota - 1) * rho and the toricness detection flag.
pub fn report_spherical(
    record: &SphericalRecord,
    picard_rank_hint: Option<usize>,
    warnings: Vec<String>,
) -> Result<MukaiReport, ReportError> {
    let result = record.p_tilde()?;
    let bound = record.mukai_bound(&result, None);

    let mut derivations = flag_derivations();
    derivations.insert(
        "class_rank".into(),
        "divisor count minus the rank of the character lattice".into(),
    );
    derivations.insert(
        "p_tilde".into(),
        "dim - rank - max over Q* n T of sum(m_D - 1 + <rho(D), theta>)".into(),
    );
    derivations.insert("mukai_upper_bound".into(), "dim - p_tilde".into());

    Ok(MukaiReport {
        dim: record.dim,
        picard_rank: picard_rank_hint,
        class_rank: Some(record.class_rank()),
        pseudo_index: None,
        p_tilde: Some(result.value.clone()),
        tau_z: None,
        tau_q: None,
        mukai_lhs: None,
        mukai_rhs: record.dim,
        margin: None,
        mukai_upper_bound: Some(bound.upper_bound.clone()),
        equality_case: None,
        flags: MukaiFlags {
            q_factorial: None,
            gorenstein: None,
            fano: None,
            toric_detected: Some(result.toric_flag),
        },
        derivations,
        toric: None,
        spherical: Some(SphericalSection {
            divisor_count: record.divisors.len(),
            rank: record.rank,
            q_star_vertices: result.q_star_vertices.clone(),
            lp_value: result.lp_value.clone(),
            argmax_theta: result.argmax_theta.clone(),
            witness_divisor: result
                .witness
                .iter()
                .map(|(name, coefficient)| WitnessEntry {
                    name: name.clone(),
                    coefficient: coefficient.clone(),
                })
                .collect(),
            gamma_note: bound.gamma_note,
            equality_note: bound.equality_note,
            warnings,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int_vec, ratio, Int};

    fn fig1_fan() -> Fan {
        Fan::face_fan(
            3,
            vec![
                int_vec(&[-1, -1, -1]),
                int_vec(&[0, -1, -1]),
                int_vec(&[1, 0, -1]),
                int_vec(&[1, 1, -1]),
                int_vec(&[0, 1, -1]),
                int_vec(&[-1, 0, -1]),
                int_vec(&[0, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fig1_report_matches_the_non_q_factorial_example() {
        let report = report_fan(&fig1_fan()).unwrap();
        assert_eq!(report.dim, 3);
        assert_eq!(report.class_rank, Some(4));
        assert_eq!(report.picard_rank, Some(1));
        assert_eq!(report.pseudo_index, Some(rat(2)));
        assert_eq!(report.mukai_lhs, Some(rat(1)));
        assert_eq!(report.mukai_rhs, 3);
        assert_eq!(report.margin, Some(rat(2)));
        assert_eq!(report.flags.q_factorial, Some(false));
        assert_eq!(report.flags.gorenstein, Some(true));
        assert_eq!(report.flags.fano, Some(true));
        // (iota-1) * rk Cl = 4 > 3 = dim, yet (iota-1) * rho = 1 < 3.
        let class_product =
            (report.pseudo_index.clone().unwrap() - rat(1)) * rat(report.class_rank.unwrap() as i64);
        assert_eq!(class_product, rat(4));
        assert!(class_product > rat(report.mukai_rhs as i64));
        assert!(report.mukai_lhs.unwrap() < rat(report.mukai_rhs as i64));
    }

    #[test]
    fn product_report_hits_the_equality_case() {
        let p4 = Fan::projective_space(4);
        let fan = Fan::product(&Fan::product(&p4, &p4), &p4);
        let report = report_fan(&fan).unwrap();
        assert_eq!(report.equality_case, Some(vec![4, 4, 4]));
        assert_eq!(report.margin, Some(rat(0)));
        assert_eq!(report.tau_z, Some(15));
        assert_eq!(report.tau_q, Some(rat(15)));
        let toric = report.toric.unwrap();
        assert_eq!(toric.mukai_type_margin, Some(rat(0)));
        assert_eq!(toric.mukai_type_equality, Some(true));
    }

    #[test]
    fn json_rendering_is_deterministic_and_round_trips() {
        let report = report_fan(&Fan::projective_space(2)).unwrap();
        let a = report.to_json_string();
        let b = report_fan(&Fan::projective_space(2)).unwrap().to_json_string();
        assert_eq!(a, b);
        let back: MukaiReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back, report);
        assert!(a.contains("\"tau_q\": \"3\""));
    }

    #[test]
    fn spherical_report_for_the_conics_record() {
        let record = crate::spherical::tests::conics_record();
        let report = report_spherical(&record, None, Vec::new()).unwrap();
        assert_eq!(report.dim, 5);
        assert_eq!(report.class_rank, Some(1));
        assert_eq!(report.p_tilde, Some(rat(0)));
        assert_eq!(report.mukai_upper_bound, Some(rat(5)));
        assert_eq!(report.flags.toric_detected, Some(true));
        assert_eq!(report.flags.fano, None);
        let section = report.spherical.as_ref().unwrap();
        assert_eq!(section.lp_value, rat(3));
        let text = report.render_text();
        assert!(text.contains("6*D2"));
    }

    #[test]
    fn p_tilde_at_least_one_clears_the_toric_flag() {
        // A record with a large color coefficient pushing p_tilde below 1
        // has the flag set; shrink dim to force p_tilde >= 1 instead.
        let (record, _) = SphericalRecord::new(
            4,
            1,
            vec![
                crate::spherical::SphericalDivisor {
                    name: "X".into(),
                    rho: int_vec(&[1]),
                    m_coeff: Int::from(1),
                    is_color: false,
                },
                crate::spherical::SphericalDivisor {
                    name: "Y".into(),
                    rho: int_vec(&[-1]),
                    m_coeff: Int::from(1),
                    is_color: false,
                },
            ],
            vec![int_vec(&[1]), int_vec(&[-1])],
        )
        .unwrap();
        let report = report_spherical(&record, None, Vec::new()).unwrap();
        // T = {0}: p_tilde = 4 - 1 - 0 = 3 >= 1.
        assert_eq!(report.p_tilde, Some(rat(3)));
        assert_eq!(report.flags.toric_detected, Some(false));
    }

    #[test]
    fn mixed_products_separate_the_two_equality_notions() {
        // P^1 x P^3: the Mukai product (iota-1)*rho = 2 stays below dim = 4,
        // but the Mukai-type margin dim + rho - tau_Q is zero.
        let fan = Fan::product(&Fan::projective_space(1), &Fan::projective_space(3));
        let report = report_fan(&fan).unwrap();
        assert_eq!(report.pseudo_index, Some(rat(2)));
        assert_eq!(report.mukai_lhs, Some(rat(2)));
        assert_eq!(report.margin, Some(rat(2)));
        assert_eq!(report.equality_case, None);
        let toric = report.toric.unwrap();
        assert_eq!(toric.mukai_type_margin, Some(rat(0)));
        assert_eq!(toric.mukai_type_factors, Some(vec![1, 3]));
    }

    #[test]
    fn bundled_q_factorial_fano_fans_satisfy_the_inequality() {
        let p2 = Fan::projective_space(2);
        let fans = vec![
            Fan::projective_space(1),
            Fan::projective_space(4),
            Fan::product(&p2, &p2),
            Fan::product(&Fan::projective_space(1), &p2),
        ];
        for fan in fans {
            let report = report_fan(&fan).unwrap();
            assert_eq!(report.flags.q_factorial, Some(true));
            assert_eq!(report.flags.fano, Some(true));
            assert!(report.margin.unwrap() >= rat(0));
        }
    }

    #[test]
    fn weighted_projective_report_has_rational_fields() {
        let fan = Fan::new(
            2,
            vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -3])],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let report = report_fan(&fan).unwrap();
        assert_eq!(report.pseudo_index, Some(ratio(5, 3)));
        assert_eq!(report.flags.gorenstein, Some(false));
        assert_eq!(report.flags.fano, Some(true));
        // Q-factorial: margin = 2 - (5/3 - 1) * 1 = 4/3 >= 0.
        assert_eq!(report.margin, Some(ratio(4, 3)));
        // Not Gorenstein: no tau fields.
        assert_eq!(report.tau_z, None);
    }
}
