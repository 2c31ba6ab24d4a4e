//! Rational polytopes in halfspace representation, with exact vertex
//! enumeration through the homogenisation cone.

use super::dd::double_description;
use super::{Cone, PolyhedralError};
use crate::exactmath::{dot_rat, lex_cmp_rat, rat_of, Int, Rat};
use num_integer::Integer as _;
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// `<normal, x> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Halfspace {
        Halfspace { normal, offset }
    }

    pub fn satisfied_by(&self, point: &[Rat]) -> bool {
        dot_rat(&self.normal, point) >= self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum VertexOutcome {
    Bounded(Vec<Vec<Rat>>),
    Unbounded,
    Empty,
}

/// An H-represented polyhedron expected to be bounded; vertices are
/// enumerated lazily and cached.
#[derive(Debug, Default)]
pub struct Polytope {
    ambient_dim: usize,
    halfspaces: Vec<Halfspace>,
    vertex_cache: OnceLock<VertexOutcome>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Polytope {
            ambient_dim: self.ambient_dim,
            halfspaces: self.halfspaces.clone(),
            vertex_cache: self.vertex_cache.clone(),
        }
    }
}

impl Polytope {
    pub fn from_halfspaces(
        ambient_dim: usize,
        halfspaces: Vec<Halfspace>,
    ) -> Result<Polytope, PolyhedralError> {
        for h in &halfspaces {
            if h.normal.len() != ambient_dim {
                return Err(PolyhedralError::DimensionMismatch {
                    expected: ambient_dim,
                    got: h.normal.len(),
                });
            }
        }
        Ok(Polytope { ambient_dim, halfspaces, vertex_cache: OnceLock::new() })
    }

    /// [lo, hi]^dim box.
    pub fn axis_box(dim: usize, lo: i64, hi: i64) -> Polytope {
        let mut hs = Vec::new();
        for i in 0..dim {
            let mut up = vec![Rat::zero(); dim];
            up[i] = Rat::one();
            hs.push(Halfspace::new(up.clone(), Rat::from_integer(Int::from(lo))));
            let mut down = vec![Rat::zero(); dim];
            down[i] = -Rat::one();
            hs.push(Halfspace::new(down, Rat::from_integer(Int::from(-hi))));
        }
        Polytope::from_halfspaces(dim, hs).expect("box halfspaces are valid")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| h.satisfied_by(point))
    }

    /// Appends the cone's facets as offset-zero halfspaces.
    pub fn intersect_cone(&self, cone: &Cone) -> Result<Polytope, PolyhedralError> {
        if cone.ambient_dim() != self.ambient_dim {
            return Err(PolyhedralError::DimensionMismatch {
                expected: self.ambient_dim,
                got: cone.ambient_dim(),
            });
        }
        let mut hs = self.halfspaces.clone();
        for f in cone.facets() {
            hs.push(Halfspace::new(f.iter().map(rat_of).collect(), Rat::zero()));
        }
        Polytope::from_halfspaces(self.ambient_dim, hs)
    }

    fn vertex_outcome(&self) -> &VertexOutcome {
        self.vertex_cache.get_or_init(|| {
            // Homogenise: <n, x> - b t >= 0 for each halfspace, plus t >= 0,
            // cleared to integers.
            let dim = self.ambient_dim + 1;
            let mut constraints: Vec<Vec<Int>> = Vec::with_capacity(self.halfspaces.len() + 1);
            for h in &self.halfspaces {
                let mut lcm = h.offset.denom().clone();
                for c in &h.normal {
                    lcm = lcm.lcm(c.denom());
                }
                let mut row: Vec<Int> =
                    h.normal.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
                row.push(-(h.offset.numer() * (&lcm / h.offset.denom())));
                constraints.push(row);
            }
            let mut t_row = vec![Int::zero(); dim];
            t_row[self.ambient_dim] = Int::one();
            constraints.push(t_row);

            let dd = double_description(dim, &constraints);
            let mut vertices: Vec<Vec<Rat>> = Vec::new();
            let mut recession = !dd.lineality.is_empty();
            for ray in &dd.rays {
                let t = &ray[self.ambient_dim];
                if t.is_zero() {
                    recession = true;
                } else {
                    let t = rat_of(t);
                    vertices.push(ray[..self.ambient_dim].iter().map(|x| rat_of(x) / &t).collect());
                }
            }
            if vertices.is_empty() {
                return VertexOutcome::Empty;
            }
            if recession {
                return VertexOutcome::Unbounded;
            }
            vertices.sort_by(|a, b| lex_cmp_rat(a, b));
            vertices.dedup();
            VertexOutcome::Bounded(vertices)
        })
    }

    /// Exact vertex list, sorted lexicographically.
    pub fn vertices(&self) -> Result<&[Vec<Rat>], PolyhedralError> {
        match self.vertex_outcome() {
            VertexOutcome::Bounded(v) => Ok(v),
            VertexOutcome::Unbounded => Err(PolyhedralError::Unbounded),
            VertexOutcome::Empty => Err(PolyhedralError::Empty),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.vertex_outcome(), VertexOutcome::Empty)
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self.vertex_outcome(), VertexOutcome::Unbounded)
    }

    /// All integer points, by a bounding-box scan over the vertex hull with
    /// a halfspace membership filter. Sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<Vec<Int>>, PolyhedralError> {
        let vertices = match self.vertex_outcome() {
            VertexOutcome::Bounded(v) => v,
            VertexOutcome::Empty => return Ok(Vec::new()),
            VertexOutcome::Unbounded => return Err(PolyhedralError::Unbounded),
        };
        let mut lo = Vec::with_capacity(self.ambient_dim);
        let mut hi = Vec::with_capacity(self.ambient_dim);
        for i in 0..self.ambient_dim {
            let min = vertices.iter().map(|v| &v[i]).min().expect("nonempty");
            let max = vertices.iter().map(|v| &v[i]).max().expect("nonempty");
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        let mut out = Vec::new();
        let mut current = lo.clone();
        'scan: loop {
            let as_rat: Vec<Rat> = current.iter().map(rat_of).collect();
            if self.contains(&as_rat) {
                out.push(current.clone());
            }
            // Odometer over the box, last coordinate fastest.
            for i in (0..self.ambient_dim).rev() {
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
        out.sort();
        Ok(out)
    }
}
