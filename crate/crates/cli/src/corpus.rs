//! Built-in example inputs. Every entry is generated programmatically and
//! serialised once, so `corpus show` output, the committed files under
//! corpus/ and the documented formats cannot drift apart.

use mukai_core::spherical::{SphericalDivisorFile, SphericalRecordFile};
use mukai_core::toric::{Fan, FanFile};
use serde::{Deserialize, Serialize};

/// Wire format for cones (used by the hilbert-basis command).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeFile {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    Fan,
    Spherical,
    Cone,
}

impl CorpusKind {
    pub fn label(self) -> &'static str {
        match self {
            CorpusKind::Fan => "fan",
            CorpusKind::Spherical => "spherical",
            CorpusKind::Cone => "cone",
        }
    }
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub kind: CorpusKind,
    pub description: &'static str,
    build: fn() -> String,
}

impl CorpusEntry {
    /// Serialised JSON; built on demand because the largest fan takes a
    /// noticeable moment to validate.
    pub fn json(&self) -> String {
        (self.build)()
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("corpus serialises");
    s.push('\n');
    s
}

fn fan_file(fan: &Fan) -> FanFile {
    FanFile::from_fan(fan)
}

fn conics_record() -> SphericalRecordFile {
    SphericalRecordFile {
        dim: 5,
        rank: 2,
        divisors: vec![
            SphericalDivisorFile { name: "X1".into(), rho: vec![-1, 0], m: 1, color: false },
            SphericalDivisorFile { name: "D1".into(), rho: vec![2, -1], m: 1, color: true },
            SphericalDivisorFile { name: "D2".into(), rho: vec![-1, 2], m: 1, color: true },
        ],
        valuation_cone_generators: vec![vec![-1, 0], vec![0, -1]],
    }
}

fn fig1_polytope() -> FanFile {
    FanFile {
        lattice_dim: 3,
        rays: None,
        max_cones: None,
        from_polytope: Some(vec![
            vec![-1, -1, -1],
            vec![0, -1, -1],
            vec![1, 0, -1],
            vec![1, 1, -1],
            vec![0, 1, -1],
            vec![-1, 0, -1],
            vec![0, 0, 1],
        ]),
    }
}

fn vk4_polytope() -> FanFile {
    FanFile {
        lattice_dim: 4,
        rays: None,
        max_cones: None,
        from_polytope: Some(vec![
            vec![1, 0, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, -1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, -1, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, -1],
            vec![1, 1, 1, 1],
            vec![-1, -1, -1, -1],
        ]),
    }
}

pub fn entries() -> Vec<CorpusEntry> {
    let mut list = vec![
        CorpusEntry {
            name: "conics",
            kind: CorpusKind::Spherical,
            description: "rank-2 spherical record of the space of conics (dim 5)",
            build: || pretty(&conics_record()),
        },
        CorpusEntry {
            name: "fig1",
            kind: CorpusKind::Fan,
            description: "reflexive polytope whose face fan is a non-Q-factorial Fano threefold",
            build: || pretty(&fig1_polytope()),
        },
        CorpusEntry {
            name: "vk4",
            kind: CorpusKind::Fan,
            description: "Voskresenskij-Klyachko fourfold from its printed ray matrix",
            build: || pretty(&vk4_polytope()),
        },
        CorpusEntry {
            name: "p1",
            kind: CorpusKind::Fan,
            description: "projective line",
            build: || pretty(&fan_file(&Fan::projective_space(1))),
        },
        CorpusEntry {
            name: "p2",
            kind: CorpusKind::Fan,
            description: "projective plane",
            build: || pretty(&fan_file(&Fan::projective_space(2))),
        },
        CorpusEntry {
            name: "p5",
            kind: CorpusKind::Fan,
            description: "projective 5-space",
            build: || pretty(&fan_file(&Fan::projective_space(5))),
        },
        CorpusEntry {
            name: "p1xp1",
            kind: CorpusKind::Fan,
            description: "product of two projective lines",
            build: || {
                let p1 = Fan::projective_space(1);
                pretty(&fan_file(&Fan::product(&p1, &p1)))
            },
        },
        CorpusEntry {
            name: "p2xp2",
            kind: CorpusKind::Fan,
            description: "product of two projective planes",
            build: || {
                let p2 = Fan::projective_space(2);
                pretty(&fan_file(&Fan::product(&p2, &p2)))
            },
        },
        CorpusEntry {
            name: "p4x4x4",
            kind: CorpusKind::Fan,
            description: "product of three projective 4-spaces (dim 12)",
            build: || {
                let p4 = Fan::projective_space(4);
                pretty(&fan_file(&Fan::product(&Fan::product(&p4, &p4), &p4)))
            },
        },
        CorpusEntry {
            name: "cone12",
            kind: CorpusKind::Cone,
            description: "singular plane cone spanned by (1,0) and (1,2)",
            build: || {
                pretty(&ConeFile { ambient_dim: 2, generators: vec![vec![1, 0], vec![1, 2]] })
            },
        },
    ];
    list.sort_by_key(|e| e.name);
    list
}

pub fn find(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_at_least_six_entries_with_unique_names() {
        let es = entries();
        assert!(es.len() >= 6);
        let mut names: Vec<&str> = es.iter().map(|e| e.name).collect();
        names.dedup();
        assert_eq!(names.len(), es.len());
    }

    #[test]
    fn every_entry_round_trips_losslessly() {
        for entry in entries() {
            let json = entry.json();
            match entry.kind {
                CorpusKind::Fan => {
                    let parsed: FanFile = serde_json::from_str(&json).unwrap();
                    let again = pretty(&parsed);
                    assert_eq!(json, again, "{} drifts", entry.name);
                    parsed.into_fan().unwrap();
                }
                CorpusKind::Spherical => {
                    let parsed: SphericalRecordFile = serde_json::from_str(&json).unwrap();
                    let again = pretty(&parsed);
                    assert_eq!(json, again, "{} drifts", entry.name);
                    parsed.into_record().unwrap();
                }
                CorpusKind::Cone => {
                    let parsed: ConeFile = serde_json::from_str(&json).unwrap();
                    let again = pretty(&parsed);
                    assert_eq!(json, again, "{} drifts", entry.name);
                }
            }
        }
    }
}
