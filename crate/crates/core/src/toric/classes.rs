//! The working class lattice (integral Cartier divisors modulo characters)
//! and the nef cone in its coordinates.
//!
//! For smooth fans the Cartier lattice is all of Z^rays. In general it is
//! the projection to divisor coordinates of the integer kernel of the
//! per-cone character gluing system, so non-simplicial fans work inside
//! their Cartier sub-lattice.

use super::{Fan, FanError};
use crate::exactmath::{
    integer_kernel, invert_rational, rat_of, smith_normal_form, solve_rational, Int, IntMatrix,
    Rat,
};
use crate::polyhedra::Cone;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct ClassLattice {
    pub ray_count: usize,
    pub lattice_dim: usize,
    /// Rank of the Cartier class lattice (the Picard rank).
    pub class_rank: usize,
    /// Invariant factors > 1 of Cartier divisors modulo characters.
    pub picard_torsion: Vec<Int>,
    /// Z-basis of the Cartier divisor lattice inside Z^rays.
    cartier_basis: Vec<Vec<Int>>,
    /// Rows of the quotient map: class(y) for y in basis coordinates.
    quotient_rows: Vec<Vec<Int>>,
    /// Divisors lifting the class basis vectors.
    basis_lifts: Vec<Vec<Int>>,
}

impl ClassLattice {
    fn build(fan: &Fan) -> Result<ClassLattice, FanError> {
        fan.walls()?;
        let n = fan.lattice_dim();
        let ray_count = fan.rays().len();

        let cartier_basis: Vec<Vec<Int>> = if fan.is_smooth() {
            // Unimodular cones glue integral characters for every divisor.
            (0..ray_count)
                .map(|i| {
                    let mut e = vec![Int::zero(); ray_count];
                    e[i] = Int::one();
                    e
                })
                .collect()
        } else {
            // Integer kernel of the gluing system in variables
            // (a_1..a_N, m_c for each maximal cone c).
            let k = fan.max_cones().len();
            let cols = ray_count + k * n;
            let mut rows: Vec<Vec<Int>> = Vec::new();
            for (c, cone_rays) in fan.max_cones().iter().enumerate() {
                for &g in cone_rays {
                    let mut row = vec![Int::zero(); cols];
                    row[g] = Int::one();
                    for i in 0..n {
                        row[ray_count + c * n + i] = fan.rays()[g][i].clone();
                    }
                    rows.push(row);
                }
            }
            integer_kernel(&IntMatrix::from_rows(&rows))
                .into_iter()
                .map(|v| v[..ray_count].to_vec())
                .collect()
        };
        let rank_cartier = cartier_basis.len();
        debug_assert!(rank_cartier >= n);

        // Principal divisors expressed in the Cartier basis.
        let basis_rows: Vec<Vec<Rat>> = (0..ray_count)
            .map(|r| cartier_basis.iter().map(|b| rat_of(&b[r])).collect())
            .collect();
        let mut principal_coords = IntMatrix::zeros(rank_cartier, n);
        for i in 0..n {
            let rhs: Vec<Rat> = fan.rays().iter().map(|v| rat_of(&v[i])).collect();
            let x = solve_rational(&basis_rows, &rhs)
                .expect("principal divisors are Cartier");
            for (t, xt) in x.iter().enumerate() {
                assert!(xt.is_integer(), "Cartier basis must span principal divisors over Z");
                principal_coords[(t, i)] = xt.to_integer();
            }
        }

        let snf = smith_normal_form(&principal_coords);
        assert_eq!(snf.rank(), n, "characters inject into Cartier divisors on complete fans");
        let picard_torsion: Vec<Int> = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        let class_rank = rank_cartier - n;
        let quotient_rows: Vec<Vec<Int>> =
            (n..rank_cartier).map(|r| snf.u.row(r).to_vec()).collect();

        // Lifts: columns n..rank of U^{-1}, pushed through the basis.
        let u_rat: Vec<Vec<Rat>> = (0..rank_cartier)
            .map(|r| snf.u.row(r).iter().map(rat_of).collect())
            .collect();
        let u_inv = invert_rational(&u_rat).expect("U is unimodular");
        let mut basis_lifts = Vec::with_capacity(class_rank);
        for t in 0..class_rank {
            let mut divisor = vec![Int::zero(); ray_count];
            for (s, basis_vec) in cartier_basis.iter().enumerate() {
                let coeff = &u_inv[s][n + t];
                assert!(coeff.is_integer());
                let c = coeff.to_integer();
                if c.is_zero() {
                    continue;
                }
                for (d, b) in divisor.iter_mut().zip(basis_vec) {
                    *d += &c * b;
                }
            }
            basis_lifts.push(divisor);
        }

        Ok(ClassLattice {
            ray_count,
            lattice_dim: n,
            class_rank,
            picard_torsion,
            cartier_basis,
            quotient_rows,
            basis_lifts,
        })
    }

    /// Class of an integral Cartier divisor in the free quotient, or None
    /// when the divisor is not integrally Cartier.
    pub fn class_of_divisor(&self, coefficients: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(coefficients.len(), self.ray_count);
        let basis_rows: Vec<Vec<Rat>> = (0..self.ray_count)
            .map(|r| self.cartier_basis.iter().map(|b| rat_of(&b[r])).collect())
            .collect();
        let rhs: Vec<Rat> = coefficients.iter().map(rat_of).collect();
        let coords = solve_rational(&basis_rows, &rhs)?;
        if !coords.iter().all(Rat::is_integer) {
            return None;
        }
        let y: Vec<Int> = coords.iter().map(Rat::to_integer).collect();
        Some(
            self.quotient_rows
                .iter()
                .map(|row| crate::exactmath::dot_int(row, &y))
                .collect(),
        )
    }

    /// A divisor whose class is the given vector.
    pub fn lift_class(&self, class: &[Int]) -> Vec<Int> {
        assert_eq!(class.len(), self.class_rank);
        let mut divisor = vec![Int::zero(); self.ray_count];
        for (c, lift) in class.iter().zip(&self.basis_lifts) {
            if c.is_zero() {
                continue;
            }
            for (d, l) in divisor.iter_mut().zip(lift) {
                *d += c * l;
            }
        }
        divisor
    }

    pub fn basis_lifts(&self) -> &[Vec<Int>] {
        &self.basis_lifts
    }
}

/// The nef cone in class coordinates: classes with nonnegative degree on
/// every invariant wall curve.
#[derive(Clone, Debug)]
pub struct NefCone {
    pub cone: Cone,
}

impl Fan {
    pub fn class_lattice(&self) -> Result<&ClassLattice, FanError> {
        self.class_lattice_cache()
            .get_or_init(|| ClassLattice::build(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Rank of the lattice of integral Cartier divisor classes.
    pub fn picard_rank(&self) -> Result<usize, FanError> {
        Ok(self.class_lattice()?.class_rank)
    }

    /// Nef cone in the class-lattice coordinates; extreme rays come back as
    /// primitive class vectors.
    pub fn nef_cone(&self) -> Result<&NefCone, FanError> {
        self.nef_cache()
            .get_or_init(|| {
                let lattice = self.class_lattice()?.clone();
                let walls = self.walls()?;
                let lift_data: Vec<super::CartierData> = lattice
                    .basis_lifts()
                    .iter()
                    .map(|coeffs| self.cartier_data(coeffs.clone()))
                    .collect();
                for d in &lift_data {
                    assert!(d.is_q_cartier(), "class lifts are Cartier by construction");
                }
                let mut facet_rows: Vec<Vec<Int>> = Vec::with_capacity(walls.len());
                for wall in walls {
                    let row: Vec<Rat> = lift_data
                        .iter()
                        .map(|d| self.intersect_divisor_curve(d, wall))
                        .collect::<Result<_, _>>()?;
                    if let Some(prim) = crate::exactmath::primitive_from_rat(&row) {
                        facet_rows.push(prim);
                    }
                }
                let cone = Cone::from_facets(lattice.class_rank, facet_rows)?;
                Ok(NefCone { cone })
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}
