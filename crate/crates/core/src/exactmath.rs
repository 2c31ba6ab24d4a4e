//! Arbitrary-precision integers and rationals, exact linear algebra over the
//! integers and rationals, and lattice normal forms.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to use from multiple threads.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Unbounded integer scalar.
pub type Int = BigInt;

/// Exact rational scalar, always in lowest terms with positive denominator
/// (enforced by `BigRational::new`).
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_of(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dot product of an integer vector against a rational one.
pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| rat_of(x) * y).sum()
}

/// Divides the entries by their gcd. Returns false when the vector is zero.
pub fn primitivize(v: &mut [Int]) -> bool {
    let mut g = Int::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return false;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    true
}

/// Scales a rational vector to a primitive integer vector pointing the same
/// way. Returns None for the zero vector.
pub fn primitive_from_rat(v: &[Rat]) -> Option<Vec<Int>> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitivize(&mut out).then_some(out)
}

pub fn neg_vec(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

/// Lexicographic order on rational vectors.
pub fn lex_cmp_rat(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        IntMatrix { rows: r, cols: c, entries: rows.concat() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Int>> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(&data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot_int(self.row(i), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }
}

/// U, S, V with U*m*V = S, U and V unimodular, S diagonal with each
/// diagonal entry dividing the next and all entries nonnegative.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by elementary row/column reduction with a
/// smallest-pivot heuristic to keep intermediate entries modest.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the nonzero entry of smallest magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if s[(i, j)].abs() < s[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // Clear the pivot column.
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    // Remainder is strictly smaller; promote it to pivot.
                    s.swap_rows(i, t);
                    u.swap_rows(i, t);
                    continue 'reduce;
                }
            }
            // Clear the pivot row.
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    s.swap_cols(j, t);
                    v.swap_cols(j, t);
                    continue 'reduce;
                }
            }
            // Enforce the divisibility chain: the pivot must divide every
            // entry of the trailing block.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if (&s[(i, j)] % &s[(t, t)]).is_zero() {
                        continue;
                    }
                    let one = Int::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    continue 'reduce;
                }
            }
            break;
        }

        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithNormalForm { u, s, v }
}

/// Rank over the rationals, by Gaussian elimination (a route independent of
/// the Smith normal form).
pub fn rank(m: &IntMatrix) -> usize {
    let mut work: Vec<Vec<Rat>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_of).collect())
        .collect();
    rank_rat_in_place(&mut work)
}

fn rank_rat_in_place(work: &mut [Vec<Rat>]) -> usize {
    let rows = work.len();
    let cols = work.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        for i in 0..rows {
            if i == r || work[i][col].is_zero() {
                continue;
            }
            let factor = &work[i][col] / &work[r][col];
            for j in col..cols {
                let sub = &factor * &work[r][j];
                work[i][j] -= sub;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Basis of the rational null space { x : m x = 0 }, as primitive integer
/// vectors (read as rationals).
pub fn rational_kernel(m: &IntMatrix) -> Vec<Vec<Rat>> {
    integer_kernel(m)
        .into_iter()
        .map(|v| v.into_iter().map(Rat::from_integer).collect())
        .collect()
}

/// Basis of the saturated integer kernel lattice { x in Z^n : m x = 0 },
/// taken from the unimodular V of the Smith normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols()).map(|j| snf.v.col_vec(j)).collect()
}

/// Canonical row-style Hermite basis of the lattice generated by the given
/// rows: pivots positive, entries above each pivot reduced into [0, pivot),
/// zero rows dropped. The result is the unique canonical basis of the row
/// lattice.
pub fn hermite_basis(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut work: Vec<Vec<Int>> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..work.len() {
                if work[i][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if work[i][col].abs() < work[b][col].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            work.swap(pivot_row, b);
            if work[pivot_row][col].is_negative() {
                for x in work[pivot_row].iter_mut() {
                    *x = -&*x;
                }
            }
            let mut done = true;
            for i in pivot_row + 1..work.len() {
                if work[i][col].is_zero() {
                    continue;
                }
                let q = work[i][col].div_floor(&work[pivot_row][col]);
                for j in 0..cols {
                    let sub = &q * &work[pivot_row][j];
                    work[i][j] -= sub;
                }
                if !work[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                // Reduce the rows above into canonical range.
                for i in 0..pivot_row {
                    let q = work[i][col].div_floor(&work[pivot_row][col]);
                    if q.is_zero() {
                        continue;
                    }
                    for j in 0..cols {
                        let sub = &q * &work[pivot_row][j];
                        work[i][j] -= sub;
                    }
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == work.len() {
            break;
        }
    }
    work.truncate(pivot_row);
    work
}

/// Particular rational solution of `a x = b` with free variables set to
/// zero, or None when the system is inconsistent.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut r = a[i].clone();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        let inv = work[r][col].clone();
        for j in col..=cols {
            work[r][j] = &work[r][j] / &inv;
        }
        for i in 0..rows {
            if i == r || work[i][col].is_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            for j in col..=cols {
                let sub = &factor * &work[r][j];
                work[i][j] -= sub;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero rhs.
    for i in r..rows {
        if !work[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = work[row][cols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, or None when singular.
pub fn invert_rational(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut work: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            assert_eq!(a[i].len(), n);
            let mut r = a[i].clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !work[i][col].is_zero())?;
        work.swap(col, p);
        let inv = work[col][col].clone();
        for j in 0..2 * n {
            work[col][j] = &work[col][j] / &inv;
        }
        for i in 0..n {
            if i == col || work[i][col].is_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            for j in 0..2 * n {
                let sub = &factor * &work[col][j];
                work[i][j] -= sub;
            }
        }
    }
    Some((0..n).map(|i| work[i][n..].to_vec()).collect())
}

/// Integer determinant by rational elimination.
pub fn det(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    let mut work: Vec<Vec<Rat>> = (0..n)
        .map(|i| m.row(i).iter().map(rat_of).collect())
        .collect();
    let mut result = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !work[i][col].is_zero()) else {
            return Int::zero();
        };
        if p != col {
            work.swap(col, p);
            result = -result;
        }
        result *= &work[col][col];
        for i in col + 1..n {
            if work[i][col].is_zero() {
                continue;
            }
            let factor = &work[i][col] / &work[col][col];
            for j in col..n {
                let sub = &factor * &work[col][j];
                work[i][j] -= sub;
            }
        }
    }
    debug_assert!(result.is_integer());
    result.to_integer()
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && det(m).abs().is_one()
}

/// An integer solution of `<a, x> = 1`, or None when gcd(a) != 1.
pub fn solve_unit_dot(a: &[Int]) -> Option<Vec<Int>> {
    // Fold extended gcds across the coordinates.
    let mut x = vec![Int::zero(); a.len()];
    let mut g = Int::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = ai.abs();
            x[i] = if ai.is_negative() { -Int::one() } else { Int::one() };
            continue;
        }
        let e = g.extended_gcd(ai);
        // e.gcd = e.x * g + e.y * ai
        for xj in x.iter_mut() {
            *xj *= &e.x;
        }
        x[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_one() {
        debug_assert!(dot_int(a, &x).is_one());
        Some(x)
    } else {
        None
    }
}

/// Serde adapters that write exact rationals as "p/q" strings.
pub mod rat_serde {
    use super::Rat;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn to_string(r: &Rat) -> String {
        r.to_string()
    }

    pub fn parse(s: &str) -> Result<Rat, String> {
        Rat::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"))
    }

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse(&s).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;
        use serde::ser::Serialize as _;

        pub fn serialize<S: Serializer>(r: &Option<Rat>, ser: S) -> Result<S::Ok, S::Error> {
            r.as_ref().map(super::to_string).serialize(ser)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Rat>, D::Error> {
            let s: Option<String> = Option::deserialize(de)?;
            s.map(|s| super::parse(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&super::to_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
            let strings: Vec<String> = Vec::deserialize(de)?;
            strings
                .iter()
                .map(|s| super::parse(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod mat {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Vec<Rat>], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(v.len()))?;
            for row in v {
                let strings: Vec<String> = row.iter().map(super::to_string).collect();
                seq.serialize_element(&strings)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Vec<Rat>>, D::Error> {
            let rows: Vec<Vec<String>> = Vec::deserialize(de)?;
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| super::parse(s).map_err(serde::de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}
