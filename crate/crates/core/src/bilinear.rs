//! Bilinear maps between coordinate spaces, stored by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{axpy, zero_vector, Rational, RationalMatrix, Vector};

/// A bilinear map `U x V -> W` given by the images of basis pairs.
/// `coeffs[(i * right + j) * out + k]` is the `k`-th coordinate of
/// `B(u_i, v_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    left: usize,
    right: usize,
    out: usize,
    coeffs: Vec<Rational>,
}

impl BilinearMap {
    pub fn new(left: usize, right: usize, out: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != left * right * out {
            return Err(Error::Dimension(format!(
                "{} structure constants for a bilinear map {left} x {right} -> {out}",
                coeffs.len()
            )));
        }
        Ok(Self {
            left,
            right,
            out,
            coeffs,
        })
    }

    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        Self {
            left,
            right,
            out,
            coeffs: zero_vector(left * right * out),
        }
    }

    /// `f(i, j)` must return the image of the basis pair `(i, j)`.
    pub fn from_basis_fn(left: usize, right: usize, out: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut coeffs = Vec::with_capacity(left * right * out);
        for i in 0..left {
            for j in 0..right {
                let v = f(i, j);
                assert_eq!(v.len(), out, "basis image has wrong length");
                coeffs.extend(v);
            }
        }
        Self {
            left,
            right,
            out,
            coeffs,
        }
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.coeffs[(i * self.right + j) * self.out + k]
    }

    pub fn on_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.right + j) * self.out;
        &self.coeffs[start..start + self.out]
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        debug_assert_eq!(x.len(), self.left);
        debug_assert_eq!(y.len(), self.right);
        let mut acc = zero_vector(self.out);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut acc, &(xi * yj), self.on_basis(i, j));
            }
        }
        acc
    }

    /// `B(e_i, y)` for a basis vector on the left.
    pub fn apply_basis_left(&self, i: usize, y: &[Rational]) -> Vector {
        let mut acc = zero_vector(self.out);
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut acc, yj, self.on_basis(i, j));
        }
        acc
    }

    /// `B(x, e_j)` for a basis vector on the right.
    pub fn apply_basis_right(&self, x: &[Rational], j: usize) -> Vector {
        let mut acc = zero_vector(self.out);
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut acc, xi, self.on_basis(i, j));
        }
        acc
    }

    /// Matrix of `y -> B(e_i, y)`.
    pub fn left_operator(&self, i: usize) -> RationalMatrix {
        RationalMatrix::from_fn(self.out, self.right, |k, j| self.coeff(i, j, k).clone())
    }

    /// Matrix of `x -> B(x, e_j)`.
    pub fn right_operator(&self, j: usize) -> RationalMatrix {
        RationalMatrix::from_fn(self.out, self.left, |k, i| self.coeff(i, j, k).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_shape(&self, other: &Self) {
        assert_eq!(
            (self.left, self.right, self.out),
            (other.left, other.right, other.out),
            "bilinear maps of different shapes"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other);
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
            ..self.clone()
        }
    }

    /// `A o B` for a linear map `A: W -> W'`.
    pub fn then(&self, a: &RationalMatrix) -> Self {
        assert_eq!(a.cols(), self.out);
        Self::from_basis_fn(self.left, self.right, a.rows(), |i, j| a.mul_vec(self.on_basis(i, j)))
    }

    /// `B o (L x R)` for linear maps into the two input spaces.
    pub fn precompose(&self, l: &RationalMatrix, r: &RationalMatrix) -> Self {
        assert_eq!(l.rows(), self.left);
        assert_eq!(r.rows(), self.right);
        Self::from_basis_fn(l.cols(), r.cols(), self.out, |i, j| {
            self.apply(&l.column(i), &r.column(j))
        })
    }
}
