//! Pre-Lie algebras, Rota-Baxter operators of weight lambda, bimodules and
//! the two constructions they induce: the star product and the derived
//! actions.

use num_traits::{One, Zero};

use crate::bilinear::BilinearMap;
use crate::error::{Error, Result};
use crate::exactla::{
    add_vectors, axpy, format_rational, scale_vector, sub_vectors, unit_vector, zero_vector, Rational, RationalMatrix,
    Vector,
};
use crate::verdict::Verdict;

/// Whether an operation re-checks the axioms of its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    Check,
    Trusted,
}

/// A finite-dimensional algebra given by structure constants; the pre-Lie
/// identity is checked by [`check_pre_lie`], not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieAlgebra {
    product: BilinearMap,
}

impl PreLieAlgebra {
    /// `coeffs[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `e_i e_j`.
    pub fn new(dim: usize, coeffs: Vec<Rational>) -> Result<Self> {
        Ok(Self {
            product: BilinearMap::new(dim, dim, dim, coeffs)?,
        })
    }

    pub fn from_product(product: BilinearMap) -> Result<Self> {
        let d = product.left_dim();
        if product.right_dim() != d || product.out_dim() != d {
            return Err(Error::Dimension(format!(
                "product {} x {} -> {} is not a product on one space",
                d,
                product.right_dim(),
                product.out_dim()
            )));
        }
        Ok(Self { product })
    }

    /// `f(i, j)` returns the coordinates of `e_i e_j`.
    pub fn from_basis_fn(dim: usize, f: impl FnMut(usize, usize) -> Vector) -> Self {
        Self {
            product: BilinearMap::from_basis_fn(dim, dim, dim, f),
        }
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            product: BilinearMap::zero(dim, dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.product.left_dim()
    }

    pub fn product(&self) -> &BilinearMap {
        &self.product
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.product.coeff(i, j, k)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        self.product.on_basis(i, j)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.product.apply(x, y)
    }

    /// `(x y) z - x (y z)`.
    pub fn associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        sub_vectors(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        sub_vectors(&self.mul(x, y), &self.mul(y, x))
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> RationalMatrix {
        self.product.left_operator(i)
    }

    /// Matrix of right multiplication by `e_j`.
    pub fn right_mult(&self, j: usize) -> RationalMatrix {
        self.product.right_operator(j)
    }

    fn basis(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }
}

/// A pre-Lie algebra with a linear operator and a weight. Column `j` of the
/// operator holds the coordinates of `T(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RBPreLieAlgebra {
    pub algebra: PreLieAlgebra,
    pub weight: Rational,
    pub operator: RationalMatrix,
}

impl RBPreLieAlgebra {
    pub fn new(algebra: PreLieAlgebra, weight: Rational, operator: RationalMatrix) -> Result<Self> {
        let d = algebra.dim();
        if operator.rows() != d || operator.cols() != d {
            return Err(Error::Dimension(format!(
                "operator is {}x{} on an algebra of dimension {d}",
                operator.rows(),
                operator.cols()
            )));
        }
        Ok(Self {
            algebra,
            weight,
            operator,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn apply_operator(&self, x: &[Rational]) -> Vector {
        self.operator.mul_vec(x)
    }
}

/// A bimodule `M` over an algebra of dimension `base_dim`. `left[i]` is the
/// matrix of `u -> e_i u`, `right[i]` the matrix of `u -> u e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    base_dim: usize,
    mod_dim: usize,
    left: Vec<RationalMatrix>,
    right: Vec<RationalMatrix>,
}

impl Bimodule {
    pub fn new(mod_dim: usize, left: Vec<RationalMatrix>, right: Vec<RationalMatrix>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::Dimension(format!(
                "{} left actions but {} right actions",
                left.len(),
                right.len()
            )));
        }
        for (side, mats) in [("left", &left), ("right", &right)] {
            for (i, a) in mats.iter().enumerate() {
                if a.rows() != mod_dim || a.cols() != mod_dim {
                    return Err(Error::Dimension(format!(
                        "{side} action of basis vector {} is {}x{}, expected {mod_dim}x{mod_dim}",
                        i + 1,
                        a.rows(),
                        a.cols()
                    )));
                }
            }
        }
        Ok(Self {
            base_dim: left.len(),
            mod_dim,
            left,
            right,
        })
    }

    /// The module with both actions zero.
    pub fn zero(base_dim: usize, mod_dim: usize) -> Self {
        Self {
            base_dim,
            mod_dim,
            left: vec![RationalMatrix::zeros(mod_dim, mod_dim); base_dim],
            right: vec![RationalMatrix::zeros(mod_dim, mod_dim); base_dim],
        }
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(a: &PreLieAlgebra) -> Self {
        let d = a.dim();
        Self {
            base_dim: d,
            mod_dim: d,
            left: (0..d).map(|i| a.left_mult(i)).collect(),
            right: (0..d).map(|i| a.right_mult(i)).collect(),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn mod_dim(&self) -> usize {
        self.mod_dim
    }

    pub fn left(&self) -> &[RationalMatrix] {
        &self.left
    }

    pub fn right(&self) -> &[RationalMatrix] {
        &self.right
    }

    /// `x u`.
    pub fn act_left(&self, x: &[Rational], u: &[Rational]) -> Vector {
        let mut acc = zero_vector(self.mod_dim);
        for (xi, s) in x.iter().zip(&self.left) {
            if !xi.is_zero() {
                axpy(&mut acc, xi, &s.mul_vec(u));
            }
        }
        acc
    }

    /// `u x`.
    pub fn act_right(&self, u: &[Rational], x: &[Rational]) -> Vector {
        let mut acc = zero_vector(self.mod_dim);
        for (xi, p) in x.iter().zip(&self.right) {
            if !xi.is_zero() {
                axpy(&mut acc, xi, &p.mul_vec(u));
            }
        }
        acc
    }

    /// Matrix of `u -> x u` for a general vector `x`.
    pub fn left_matrix(&self, x: &[Rational]) -> RationalMatrix {
        combine(&self.left, x, self.mod_dim)
    }

    /// Matrix of `u -> u x` for a general vector `x`.
    pub fn right_matrix(&self, x: &[Rational]) -> RationalMatrix {
        combine(&self.right, x, self.mod_dim)
    }
}

fn combine(mats: &[RationalMatrix], x: &[Rational], n: usize) -> RationalMatrix {
    let mut acc = RationalMatrix::zeros(n, n);
    for (xi, a) in x.iter().zip(mats) {
        if !xi.is_zero() {
            acc = acc.add(&a.scale(xi));
        }
    }
    acc
}

/// A bimodule together with its operator `T_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RBBimodule {
    pub bimodule: Bimodule,
    pub operator: RationalMatrix,
}

impl RBBimodule {
    pub fn new(bimodule: Bimodule, operator: RationalMatrix) -> Result<Self> {
        let m = bimodule.mod_dim();
        if operator.rows() != m || operator.cols() != m {
            return Err(Error::Dimension(format!(
                "module operator is {}x{}, expected {m}x{m}",
                operator.rows(),
                operator.cols()
            )));
        }
        Ok(Self { bimodule, operator })
    }

    /// The algebra as a module over itself, with `T_M = T`.
    pub fn regular(r: &RBPreLieAlgebra) -> Self {
        Self {
            bimodule: Bimodule::regular(&r.algebra),
            operator: r.operator.clone(),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.bimodule.base_dim()
    }

    pub fn mod_dim(&self) -> usize {
        self.bimodule.mod_dim()
    }

    pub fn apply_operator(&self, u: &[Rational]) -> Vector {
        self.operator.mul_vec(u)
    }
}

/// Associator symmetry `(x,y,z) = (y,x,z)` on basis triples with `i < j`.
pub fn check_pre_lie(a: &PreLieAlgebra) -> Verdict {
    let d = a.dim();
    let mut v = Verdict::ok();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                let defect = sub_vectors(&a.associator(&x, &y, &z), &a.associator(&y, &x, &z));
                v.check("pre-Lie", vec![i, j, k], defect);
            }
        }
    }
    v
}

/// `T(a)T(b) = T(a T(b) + T(a) b + lambda a b)` on basis pairs.
pub fn check_rb_operator(r: &RBPreLieAlgebra) -> Verdict {
    let mut v = Verdict::ok();
    if !check_pre_lie(&r.algebra).is_ok() {
        v.flag("underlying algebra is not pre-Lie");
    }
    let d = r.dim();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (r.algebra.basis(i), r.algebra.basis(j));
            v.check("Rota-Baxter", vec![i, j], rb_defect(r, &x, &y));
        }
    }
    v
}

fn rb_defect(r: &RBPreLieAlgebra, x: &[Rational], y: &[Rational]) -> Vector {
    let a = &r.algebra;
    let (tx, ty) = (r.apply_operator(x), r.apply_operator(y));
    let inner = add_vectors(
        &add_vectors(&a.mul(x, &ty), &a.mul(&tx, y)),
        &scale_vector(&r.weight, &a.mul(x, y)),
    );
    sub_vectors(&a.mul(&tx, &ty), &r.apply_operator(&inner))
}

fn check_dims(base: usize, m: &Bimodule) -> Result<()> {
    if m.base_dim() != base {
        return Err(Error::Dimension(format!(
            "module over a {}-dimensional algebra used with a {base}-dimensional one",
            m.base_dim()
        )));
    }
    Ok(())
}

/// The two representation laws, on basis vectors `x = e_i`, `y = e_j` and
/// module basis vectors `u = f_k`:
/// `x(yu) - (xy)u = y(xu) - (yx)u` and `x(uy) - (xu)y = u(xy) - (ux)y`.
pub fn check_bimodule(a: &PreLieAlgebra, m: &Bimodule) -> Result<Verdict> {
    check_dims(a.dim(), m)?;
    let (d, n) = (a.dim(), m.mod_dim());
    let mut v = Verdict::ok();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (a.basis(i), a.basis(j));
            let xy = a.mul(&x, &y);
            let yx = a.mul(&y, &x);
            for k in 0..n {
                let u = unit_vector(n, k);
                if i < j {
                    let lhs = sub_vectors(&m.act_left(&x, &m.act_left(&y, &u)), &m.act_left(&xy, &u));
                    let rhs = sub_vectors(&m.act_left(&y, &m.act_left(&x, &u)), &m.act_left(&yx, &u));
                    v.check("left-module", vec![i, j, k], sub_vectors(&lhs, &rhs));
                }
                let lhs = sub_vectors(
                    &m.act_left(&x, &m.act_right(&u, &y)),
                    &m.act_right(&m.act_left(&x, &u), &y),
                );
                let rhs = sub_vectors(&m.act_right(&u, &xy), &m.act_right(&m.act_right(&u, &x), &y));
                v.check("bimodule", vec![i, j, k], sub_vectors(&lhs, &rhs));
            }
        }
    }
    Ok(v)
}

/// The two weighted compatibility laws between `T` and `T_M`, on basis pairs
/// `(e_i, f_k)`.
pub fn check_rb_bimodule(r: &RBPreLieAlgebra, m: &RBBimodule) -> Result<Verdict> {
    let mut v = check_bimodule(&r.algebra, &m.bimodule)?;
    if !v.is_ok() {
        v.flag("underlying bimodule laws fail");
    }
    // Only the Rota-Baxter laws are reported here.
    v.violations.clear();
    let (d, n) = (r.dim(), m.mod_dim());
    let b = &m.bimodule;
    for i in 0..d {
        let x = r.algebra.basis(i);
        let tx = r.apply_operator(&x);
        for k in 0..n {
            let u = unit_vector(n, k);
            let tu = m.apply_operator(&u);
            let inner = add_vectors(
                &add_vectors(&b.act_left(&x, &tu), &b.act_left(&tx, &u)),
                &scale_vector(&r.weight, &b.act_left(&x, &u)),
            );
            v.check(
                "Rota-Baxter-left",
                vec![i, k],
                sub_vectors(&b.act_left(&tx, &tu), &m.apply_operator(&inner)),
            );
            let inner = add_vectors(
                &add_vectors(&b.act_right(&u, &tx), &b.act_right(&tu, &x)),
                &scale_vector(&r.weight, &b.act_right(&u, &x)),
            );
            v.check(
                "Rota-Baxter-right",
                vec![i, k],
                sub_vectors(&b.act_right(&tu, &tx), &m.apply_operator(&inner)),
            );
        }
    }
    Ok(v)
}

/// `[x, y] = xy - yx` as structure constants.
pub fn sub_adjacent_bracket(a: &PreLieAlgebra) -> BilinearMap {
    let d = a.dim();
    BilinearMap::from_basis_fn(d, d, d, |i, j| {
        sub_vectors(a.basis_product(i, j), a.basis_product(j, i))
    })
}

/// Antisymmetry and the Jacobi identity of a bracket on basis tuples.
pub fn check_lie(bracket: &BilinearMap) -> Verdict {
    let d = bracket.left_dim();
    let mut v = Verdict::ok();
    for i in 0..d {
        for j in i..d {
            let defect = add_vectors(bracket.on_basis(i, j), bracket.on_basis(j, i));
            v.check("antisymmetry", vec![i, j], defect);
        }
    }
    let e = |i: usize| unit_vector(d, i);
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let (x, y, z) = (e(i), e(j), e(k));
                let s1 = bracket.apply(&x, &bracket.apply(&y, &z));
                let s2 = bracket.apply(&y, &bracket.apply(&z, &x));
                let s3 = bracket.apply(&z, &bracket.apply(&x, &y));
                v.check("Jacobi", vec![i, j, k], add_vectors(&add_vectors(&s1, &s2), &s3));
            }
        }
    }
    v
}

fn require(v: &Verdict, what: &str) -> Result<()> {
    if v.is_ok() {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "{what}: violated {}",
            v.laws_violated().join(", ")
        )))
    }
}

/// Requires the pre-Lie and Rota-Baxter laws.
pub fn validate_rb_algebra(r: &RBPreLieAlgebra) -> Result<()> {
    require(&check_pre_lie(&r.algebra), "algebra")?;
    require(&check_rb_operator(r), "operator")
}

/// Requires a valid algebra and both bimodule law families.
pub fn validate_rb_pair(r: &RBPreLieAlgebra, m: &RBBimodule) -> Result<()> {
    validate_rb_algebra(r)?;
    require(&check_bimodule(&r.algebra, &m.bimodule)?, "bimodule")?;
    require(&check_rb_bimodule(r, m)?, "module operator")
}

/// `a * b = a T(b) + T(a) b + lambda a b`, with the same operator and weight.
pub fn star_algebra(r: &RBPreLieAlgebra, validation: Validation) -> Result<RBPreLieAlgebra> {
    if validation == Validation::Check {
        validate_rb_algebra(r)?;
    }
    let a = &r.algebra;
    let d = r.dim();
    let product = PreLieAlgebra::from_basis_fn(d, |i, j| {
        let (x, y) = (a.basis(i), a.basis(j));
        let mut out = a.mul(&x, &r.apply_operator(&y));
        axpy(&mut out, &Rational::one(), &a.mul(&r.apply_operator(&x), &y));
        axpy(&mut out, &r.weight, a.basis_product(i, j));
        out
    });
    RBPreLieAlgebra::new(product, r.weight.clone(), r.operator.clone())
}

/// The actions `a |> u = T(a) u - T_M(a u)` and `u <| a = u T(a) - T_M(u a)`,
/// with the same module operator.
pub fn derived_bimodule(r: &RBPreLieAlgebra, m: &RBBimodule, validation: Validation) -> Result<RBBimodule> {
    check_dims(r.dim(), &m.bimodule)?;
    if validation == Validation::Check {
        validate_rb_pair(r, m)?;
    }
    let b = &m.bimodule;
    let d = r.dim();
    let t_m = &m.operator;
    let left = (0..d)
        .map(|i| b.left_matrix(&r.operator.column(i)).sub(&t_m.mul(&b.left()[i])))
        .collect();
    let right = (0..d)
        .map(|i| b.right_matrix(&r.operator.column(i)).sub(&t_m.mul(&b.right()[i])))
        .collect();
    RBBimodule::new(Bimodule::new(m.mod_dim(), left, right)?, t_m.clone())
}

/// `phi(a b) = phi(a) phi(b)` and `phi T1 = T2 phi` for `phi: r1 -> r2`.
pub fn check_morphism(r1: &RBPreLieAlgebra, r2: &RBPreLieAlgebra, phi: &RationalMatrix) -> Result<Verdict> {
    if r1.weight != r2.weight {
        return Err(Error::WeightMismatch(
            format_rational(&r1.weight),
            format_rational(&r2.weight),
        ));
    }
    if phi.rows() != r2.dim() || phi.cols() != r1.dim() {
        return Err(Error::Dimension(format!(
            "map is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            r2.dim(),
            r1.dim()
        )));
    }
    let mut v = Verdict::ok();
    if phi.is_zero() && r1.dim() > 0 {
        v.flag("degenerate");
    }
    let d = r1.dim();
    let images: Vec<Vector> = (0..d).map(|i| phi.column(i)).collect();
    for i in 0..d {
        for j in 0..d {
            let lhs = phi.mul_vec(r1.algebra.basis_product(i, j));
            let rhs = r2.algebra.mul(&images[i], &images[j]);
            v.check("morphism-product", vec![i, j], sub_vectors(&lhs, &rhs));
        }
    }
    let lhs = phi.mul(&r1.operator);
    let rhs = r2.operator.mul(phi);
    for i in 0..d {
        v.check(
            "morphism-operator",
            vec![i],
            sub_vectors(&lhs.column(i), &rhs.column(i)),
        );
    }
    Ok(v)
}

/// The same structure written in the basis given by the columns of `p`.
pub fn change_of_basis(r: &RBPreLieAlgebra, p: &RationalMatrix) -> Result<RBPreLieAlgebra> {
    let inv = p
        .inverse()
        .ok_or_else(|| Error::Invalid("change-of-basis matrix is singular".into()))?;
    let product = r.algebra.product().precompose(p, p).then(&inv);
    RBPreLieAlgebra::new(
        PreLieAlgebra::from_product(product)?,
        r.weight.clone(),
        inv.mul(&r.operator).mul(p),
    )
}

/// The same module written in the algebra basis `p` and module basis `q`
/// (both given by columns).
pub fn change_module_basis(m: &RBBimodule, p: &RationalMatrix, q: &RationalMatrix) -> Result<RBBimodule> {
    let qinv = q
        .inverse()
        .ok_or_else(|| Error::Invalid("change-of-basis matrix is singular".into()))?;
    let b = &m.bimodule;
    let conj = |a: RationalMatrix| qinv.mul(&a).mul(q);
    let d = p.cols();
    let left = (0..d).map(|i| conj(b.left_matrix(&p.column(i)))).collect();
    let right = (0..d).map(|i| conj(b.right_matrix(&p.column(i)))).collect();
    RBBimodule::new(Bimodule::new(m.mod_dim(), left, right)?, conj(m.operator.clone()))
}
