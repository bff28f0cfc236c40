//! Exact dense linear algebra over the rationals.
//!
//! Everything in this crate bottoms out here: structure constants, cochains
//! and differentials are all vectors and matrices of [`Rational`]s, and every
//! cohomology dimension or solvability question is answered by Gauss-Jordan
//! elimination without any rounding.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Rational>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: text.to_string(),
        reason,
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer = BigInt::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(err("denominator must be an unsigned positive integer"));
            }
            BigInt::from_str(d).map_err(|_| err("denominator is not an integer"))?
        }
    };
    if denom.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: zero_vector(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds from a list of equally long rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {} but {cols} columns were declared",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::new(n, cols, entries)
    }

    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self> {
        if let Some((i, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != rows) {
            return Err(Error::Dimension(format!(
                "column {i} has length {} but {rows} rows were declared",
                c.len()
            )));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = zero_vector(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: add_vectors(&self.entries, &other.entries),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: sub_vectors(&self.entries, &other.entries),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: scale_vector(c, &self.entries),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ech = Echelon::new(&self.hstack(&Self::identity(n)));
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| ech.rows[r][n + c].clone()))
    }
}

/// Reduced row echelon form of a matrix, kept together with its pivot
/// columns. Pivot selection is the first nonzero entry scanning columns left
/// to right, so the result is fully deterministic.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    /// Nonzero rows of the reduced form; row `i` has a leading one in
    /// column `pivots[i]`.
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &RationalMatrix) -> Self {
        let mut a = m.to_rows();
        let n_rows = a.len();
        let n_cols = m.cols();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..n_cols {
            if pr >= n_rows {
                break;
            }
            let Some(found) = (pr..n_rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(found, pr);
            let inv = a[pr][col].recip();
            if !inv.is_one() {
                for x in a[pr][col..].iter_mut() {
                    *x *= &inv;
                }
            }
            let pivot_row = a[pr].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == pr || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(col);
            pr += 1;
        }
        a.truncate(pr);
        Self {
            cols: n_cols,
            rows: a,
            pivots,
        }
    }

    /// Echelon form of the span of the given vectors (as rows).
    pub fn of_span(vectors: &[Vector], dim: usize) -> Self {
        let m = RationalMatrix::from_rows(vectors.to_vec(), dim).expect("span vectors must have length dim");
        Self::new(&m)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the null space; one vector per free column, with a one in
    /// that column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|fc| {
                let mut v = zero_vector(self.cols);
                v[fc] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = -row[fc].clone();
                }
                v
            })
            .collect()
    }

    /// Reduces `v` modulo the row space. The result is supported on the
    /// free columns only and is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols);
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for (x, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.reduce(v))
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    Echelon::new(m).rank()
}

pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vector> {
    Echelon::new(m).kernel_basis()
}

/// Solves `a x = b`. Returns `Ok(None)` when the system is inconsistent.
/// Among all solutions the one with every free variable set to zero is
/// returned, so the answer is deterministic.
pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> Result<Option<Vector>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let augmented = RationalMatrix::from_fn(
        a.rows(),
        n + 1,
        |r, c| {
            if c < n {
                a.get(r, c).clone()
            } else {
                b[r].clone()
            }
        },
    );
    let ech = Echelon::new(&augmented);
    if ech.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = zero_vector(n);
    for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
        x[pc] = row[n].clone();
    }
    Ok(Some(x))
}

/// `base^exp` for a non-negative exponent, with `0^0 = 1`.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Absolute size of the largest numerator or denominator, handy when
/// sanity-checking random instance growth.
pub fn height(v: &[Rational]) -> BigInt {
    v.iter()
        .map(|q| q.numer().abs().max(q.denom().clone()))
        .max()
        .unwrap_or_else(BigInt::one)
}
