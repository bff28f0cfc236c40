//! Two-term Rota-Baxter pre-Lie algebras `g1 -> g0`: axiom checks, the
//! skeletal case as 3-cocycles and the strict case as crossed modules.

use num_traits::{One, Zero};

use crate::bilinear::BilinearMap;
use crate::complexes::{Cochain, Complexes, RBACochain};
use crate::error::{Error, Result};
use crate::exactla::{axpy, pow, sub_vectors, unit_vector, zero_vector, Rational, RationalMatrix, Vector};
use crate::prelie::{
    check_pre_lie, check_rb_bimodule, check_rb_operator, Bimodule, PreLieAlgebra, RBBimodule, RBPreLieAlgebra,
    Validation,
};
use crate::verdict::Verdict;

/// Structure maps of a two-term algebra. The weight is kept beside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoAlgebra {
    /// `d: g1 -> g0`, `dim0 x dim1`.
    pub d: RationalMatrix,
    /// `l2: g0 x g0 -> g0`.
    pub l2_00: BilinearMap,
    /// `l2: g0 x g1 -> g1`.
    pub l2_01: BilinearMap,
    /// `l2: g1 x g0 -> g1`.
    pub l2_10: BilinearMap,
    /// `l3: g0 x g0 x g0 -> g1`, skew in the first two slots.
    pub l3: Cochain,
    pub t0: RationalMatrix,
    pub t1: RationalMatrix,
    /// `T2: g0 x g0 -> g1`.
    pub t2: BilinearMap,
}

impl TwoAlgebra {
    pub fn dim0(&self) -> usize {
        self.t0.rows()
    }

    pub fn dim1(&self) -> usize {
        self.t1.rows()
    }

    pub fn is_skeletal(&self) -> bool {
        self.d.is_zero()
    }

    pub fn is_strict(&self) -> bool {
        self.l3.is_zero() && self.t2.is_zero()
    }

    pub fn check_shape(&self) -> Result<()> {
        let (n0, n1) = (self.dim0(), self.dim1());
        let shapes = [
            ("T0", (self.t0.rows(), self.t0.cols()), (n0, n0)),
            ("T1", (self.t1.rows(), self.t1.cols()), (n1, n1)),
            ("d", (self.d.rows(), self.d.cols()), (n0, n1)),
        ];
        for (name, got, want) in shapes {
            if got != want {
                return Err(Error::Dimension(format!(
                    "{name} is {}x{}, expected {}x{}",
                    got.0, got.1, want.0, want.1
                )));
            }
        }
        let bilinear = [
            ("l2 on g0 x g0", &self.l2_00, (n0, n0, n0)),
            ("l2 on g0 x g1", &self.l2_01, (n0, n1, n1)),
            ("l2 on g1 x g0", &self.l2_10, (n1, n0, n1)),
            ("T2", &self.t2, (n0, n0, n1)),
        ];
        for (name, b, want) in bilinear {
            let got = (b.left_dim(), b.right_dim(), b.out_dim());
            if got != want {
                return Err(Error::Dimension(format!("{name} has shape {got:?}, expected {want:?}")));
            }
        }
        if (self.l3.degree(), self.l3.base_dim(), self.l3.mod_dim()) != (3, n0, n1) {
            return Err(Error::Dimension(format!(
                "l3 is a degree {} cochain on {} with values in {}, expected degree 3 on {n0} with values in {n1}",
                self.l3.degree(),
                self.l3.base_dim(),
                self.l3.mod_dim()
            )));
        }
        Ok(())
    }

    /// The skeletal algebra with `g0 = r`, `g1 = m`, `l3` and `T2`.
    pub fn skeletal(r: &RBPreLieAlgebra, m: &RBBimodule, l3: Cochain, t2: BilinearMap) -> Result<Self> {
        let (n0, n1) = (r.dim(), m.mod_dim());
        if m.base_dim() != n0 {
            return Err(Error::Dimension("module and algebra dimensions differ".into()));
        }
        let (l2_01, l2_10) = actions_to_bilinear(&m.bimodule);
        let t = Self {
            d: RationalMatrix::zeros(n0, n1),
            l2_00: r.algebra.product().clone(),
            l2_01,
            l2_10,
            l3,
            t0: r.operator.clone(),
            t1: m.operator.clone(),
            t2,
        };
        t.check_shape()?;
        Ok(t)
    }

    /// `r` as a two-term algebra with `g1 = 0`.
    pub fn of_algebra(r: &RBPreLieAlgebra) -> Self {
        let n0 = r.dim();
        Self {
            d: RationalMatrix::zeros(n0, 0),
            l2_00: r.algebra.product().clone(),
            l2_01: BilinearMap::zero(n0, 0, 0),
            l2_10: BilinearMap::zero(0, n0, 0),
            l3: Cochain::zero(3, n0, 0),
            t0: r.operator.clone(),
            t1: RationalMatrix::zeros(0, 0),
            t2: BilinearMap::zero(n0, n0, 0),
        }
    }

    /// `g0` with its product and `T0`.
    pub fn base(&self, weight: &Rational) -> Result<RBPreLieAlgebra> {
        RBPreLieAlgebra::new(
            PreLieAlgebra::from_product(self.l2_00.clone())?,
            weight.clone(),
            self.t0.clone(),
        )
    }

    /// `g1` as a module over `g0` through the mixed `l2`, with `T1`.
    pub fn module(&self) -> Result<RBBimodule> {
        let n0 = self.dim0();
        let left = (0..n0).map(|i| self.l2_01.left_operator(i)).collect();
        let right = (0..n0).map(|i| self.l2_10.right_operator(i)).collect();
        RBBimodule::new(Bimodule::new(self.dim1(), left, right)?, self.t1.clone())
    }
}

fn actions_to_bilinear(m: &Bimodule) -> (BilinearMap, BilinearMap) {
    let (n0, n1) = (m.base_dim(), m.mod_dim());
    let left = BilinearMap::from_basis_fn(n0, n1, n1, |i, a| m.left()[i].column(a));
    let right = BilinearMap::from_basis_fn(n1, n0, n1, |a, i| m.right()[i].column(a));
    (left, right)
}

/// Evaluation of the structure maps on coordinate vectors.
struct Maps<'a> {
    t: &'a TwoAlgebra,
    weight: &'a Rational,
}

impl Maps<'_> {
    fn d(&self, a: &[Rational]) -> Vector {
        self.t.d.mul_vec(a)
    }

    fn l00(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.t.l2_00.apply(x, y)
    }

    fn l01(&self, x: &[Rational], a: &[Rational]) -> Vector {
        self.t.l2_01.apply(x, a)
    }

    fn l10(&self, a: &[Rational], x: &[Rational]) -> Vector {
        self.t.l2_10.apply(a, x)
    }

    fn l3(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        self.t.l3.eval(&[x.to_vec(), y.to_vec(), z.to_vec()]).expect("arity")
    }

    fn t0(&self, x: &[Rational]) -> Vector {
        self.t.t0.mul_vec(x)
    }

    fn t1(&self, a: &[Rational]) -> Vector {
        self.t.t1.mul_vec(a)
    }

    fn t2(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.t.t2.apply(x, y)
    }

    /// `T0(x) y + x T0(y) + lambda x y`.
    fn star(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = self.l00(&self.t0(x), y);
        axpy(&mut out, &Rational::one(), &self.l00(x, &self.t0(y)));
        axpy(&mut out, self.weight, &self.l00(x, y));
        out
    }

    /// `l2(x, l2(y, z)) - l2(l2(x, y), z) - l2(y, l2(x, z)) + l2(l2(y, x), z)`
    /// with `z` in `g0`.
    fn jacobiator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        let mut out = self.l00(x, &self.l00(y, z));
        axpy(&mut out, &-Rational::one(), &self.l00(&self.l00(x, y), z));
        axpy(&mut out, &-Rational::one(), &self.l00(y, &self.l00(x, z)));
        axpy(&mut out, &Rational::one(), &self.l00(&self.l00(y, x), z));
        out
    }
}

fn sum(terms: &[(i64, Vector)], n: usize) -> Vector {
    let mut out = zero_vector(n);
    for (c, v) in terms {
        axpy(&mut out, &Rational::from_integer((*c).into()), v);
    }
    out
}

/// The left side of the coherence identity between `l2` and `l3`, at
/// `(w, x, y, z)`.
pub fn condition_f(t: &TwoAlgebra, w: &[Rational], x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    let zero = Rational::zero();
    let s = Maps { t, weight: &zero };
    let br = |a: &[Rational], b: &[Rational]| sub_vectors(&s.l00(a, b), &s.l00(b, a));
    sum(
        &[
            (1, s.l01(w, &s.l3(x, y, z))),
            (-1, s.l01(x, &s.l3(w, y, z))),
            (1, s.l01(y, &s.l3(w, x, z))),
            (1, s.l10(&s.l3(x, y, w), z)),
            (-1, s.l10(&s.l3(w, y, x), z)),
            (1, s.l10(&s.l3(w, x, y), z)),
            (-1, s.l3(x, y, &s.l00(w, z))),
            (1, s.l3(w, y, &s.l00(x, z))),
            (-1, s.l3(w, x, &s.l00(y, z))),
            (-1, s.l3(&br(w, x), y, z)),
            (1, s.l3(&br(w, y), x, z)),
            (-1, s.l3(&br(x, y), w, z)),
        ],
        t.dim1(),
    )
}

/// The operator coherence between `T2`, `l3` and `T1` at `(x1, x2, x3)`:
/// the coboundary of `T2` in the derived actions
/// `x |> u = l2(T0 x, u) - T1 l2(x, u)`, `u <| x = l2(u, T0 x) - T1 l2(u, x)`
/// over the star product, plus the chain map applied to `l3`.
pub fn condition_v(t: &TwoAlgebra, weight: &Rational, x1: &[Rational], x2: &[Rational], x3: &[Rational]) -> Vector {
    let s = Maps { t, weight };
    let n1 = t.dim1();
    let left = |x: &[Rational], u: &[Rational]| sub_vectors(&s.l01(&s.t0(x), u), &s.t1(&s.l01(x, u)));
    let right = |u: &[Rational], x: &[Rational]| sub_vectors(&s.l10(u, &s.t0(x)), &s.t1(&s.l10(u, x)));
    let star_br = sub_vectors(&s.star(x1, x2), &s.star(x2, x1));
    let mut out = sum(
        &[
            (1, left(x1, &s.t2(x2, x3))),
            (-1, left(x2, &s.t2(x1, x3))),
            (1, right(&s.t2(x2, x1), x3)),
            (-1, right(&s.t2(x1, x2), x3)),
            (-1, s.t2(x2, &s.star(x1, x3))),
            (1, s.t2(x1, &s.star(x2, x3))),
            (-1, s.t2(&star_br, x3)),
        ],
        n1,
    );
    let xs = [x1, x2, x3];
    let txs: Vec<Vector> = xs.iter().map(|x| s.t0(x)).collect();
    axpy(&mut out, &Rational::one(), &s.l3(&txs[0], &txs[1], &txs[2]));
    let mut inner = zero_vector(n1);
    for pattern in 0u32..7 {
        let coef = pow(weight, 2 - pattern.count_ones() as usize);
        if coef.is_zero() {
            continue;
        }
        let arg = |p: usize| -> &[Rational] {
            if pattern & (1 << p) != 0 {
                &txs[p]
            } else {
                xs[p]
            }
        };
        axpy(&mut inner, &coef, &s.l3(arg(0), arg(1), arg(2)));
    }
    axpy(&mut out, &-Rational::one(), &s.t1(&inner));
    out
}

/// The operator coherence in its printed form: the plain `l2(T0 x, -)`
/// actions and the single correction `T1 l3(x1, x2, x3)`. It agrees with
/// [`condition_v`] when `T1 = 0`.
pub fn condition_v_literal(
    t: &TwoAlgebra,
    weight: &Rational,
    x1: &[Rational],
    x2: &[Rational],
    x3: &[Rational],
) -> Vector {
    let s = Maps { t, weight };
    sum(
        &[
            (1, s.l01(&s.t0(x1), &s.t2(x2, x3))),
            (-1, s.l01(&s.t0(x2), &s.t2(x1, x3))),
            (1, s.l10(&s.t2(x2, x1), &s.t0(x3))),
            (-1, s.l10(&s.t2(x1, x2), &s.t0(x3))),
            (-1, s.t2(x2, &s.star(x1, x3))),
            (1, s.t2(x1, &s.star(x2, x3))),
            (-1, s.t2(&s.star(x1, x2), x3)),
            (1, s.t2(&s.star(x2, x1), x3)),
            (1, s.l3(&s.t0(x1), &s.t0(x2), &s.t0(x3))),
            (-1, s.t1(&s.l3(x1, x2, x3))),
        ],
        t.dim1(),
    )
}

/// Checks the pre-Lie two-term axioms (a), (b), (c), (e1), (e2), (e3), (f)
/// on all basis tuples.
pub fn check_prelie_2alg(t: &TwoAlgebra) -> Result<Verdict> {
    t.check_shape()?;
    let zero = Rational::zero();
    let s = Maps { t, weight: &zero };
    let (n0, n1) = (t.dim0(), t.dim1());
    let e0: Vec<Vector> = (0..n0).map(|i| unit_vector(n0, i)).collect();
    let e1: Vec<Vector> = (0..n1).map(|i| unit_vector(n1, i)).collect();
    let mut v = Verdict::ok();
    for (x, ex) in e0.iter().enumerate() {
        for (a, ea) in e1.iter().enumerate() {
            let da = s.d(ea);
            v.check("(a)", vec![x, a], sub_vectors(&s.d(&s.l01(ex, ea)), &s.l00(ex, &da)));
            v.check("(b)", vec![a, x], sub_vectors(&s.d(&s.l10(ea, ex)), &s.l00(&da, ex)));
        }
    }
    for (a, ea) in e1.iter().enumerate() {
        for (b, eb) in e1.iter().enumerate() {
            v.check(
                "(c)",
                vec![a, b],
                sub_vectors(&s.l01(&s.d(ea), eb), &s.l10(ea, &s.d(eb))),
            );
        }
    }
    for (x, ex) in e0.iter().enumerate() {
        for (y, ey) in e0.iter().enumerate() {
            for (z, ez) in e0.iter().enumerate() {
                let lhs = s.d(&s.l3(ex, ey, ez));
                v.check("(e1)", vec![x, y, z], sub_vectors(&lhs, &s.jacobiator(ex, ey, ez)));
            }
            for (a, ea) in e1.iter().enumerate() {
                let rhs = sum(
                    &[
                        (1, s.l01(ex, &s.l01(ey, ea))),
                        (-1, s.l01(&s.l00(ex, ey), ea)),
                        (-1, s.l01(ey, &s.l01(ex, ea))),
                        (1, s.l01(&s.l00(ey, ex), ea)),
                    ],
                    n1,
                );
                v.check("(e2)", vec![x, y, a], sub_vectors(&s.l3(ex, ey, &s.d(ea)), &rhs));
                let rhs = sum(
                    &[
                        (1, s.l10(ea, &s.l00(ex, ey))),
                        (-1, s.l10(&s.l10(ea, ex), ey)),
                        (-1, s.l01(ex, &s.l10(ea, ey))),
                        (1, s.l10(&s.l01(ex, ea), ey)),
                    ],
                    n1,
                );
                v.check("(e3)", vec![a, x, y], sub_vectors(&s.l3(&s.d(ea), ex, ey), &rhs));
            }
        }
    }
    for (w, ew) in e0.iter().enumerate() {
        for (x, ex) in e0.iter().enumerate() {
            for (y, ey) in e0.iter().enumerate() {
                for (z, ez) in e0.iter().enumerate() {
                    v.check("(f)", vec![w, x, y, z], condition_f(t, ew, ex, ey, ez));
                }
            }
        }
    }
    Ok(v)
}

/// Checks the operator axioms (i)-(v) of weight `weight` on all basis
/// tuples, with (v) in the form of [`condition_v`].
pub fn check_rb_2alg(t: &TwoAlgebra, weight: &Rational) -> Result<Verdict> {
    check_rb_2alg_with(t, weight, condition_v)
}

/// As [`check_rb_2alg`], with (v) in its printed form
/// [`condition_v_literal`].
pub fn check_rb_2alg_literal(t: &TwoAlgebra, weight: &Rational) -> Result<Verdict> {
    check_rb_2alg_with(t, weight, condition_v_literal)
}

type Coherence = fn(&TwoAlgebra, &Rational, &[Rational], &[Rational], &[Rational]) -> Vector;

fn check_rb_2alg_with(t: &TwoAlgebra, weight: &Rational, coherence: Coherence) -> Result<Verdict> {
    t.check_shape()?;
    let s = Maps { t, weight };
    let (n0, n1) = (t.dim0(), t.dim1());
    let e0: Vec<Vector> = (0..n0).map(|i| unit_vector(n0, i)).collect();
    let e1: Vec<Vector> = (0..n1).map(|i| unit_vector(n1, i)).collect();
    let mut v = Verdict::ok();
    let lhs = t.t0.mul(&t.d);
    let rhs = t.d.mul(&t.t1);
    for a in 0..n1 {
        v.check("(i)", vec![a], sub_vectors(&lhs.column(a), &rhs.column(a)));
    }
    for (x, ex) in e0.iter().enumerate() {
        for (y, ey) in e0.iter().enumerate() {
            let defect = sub_vectors(&s.t0(&s.star(ex, ey)), &s.l00(&s.t0(ex), &s.t0(ey)));
            v.check("(ii)", vec![x, y], sub_vectors(&defect, &s.d(&s.t2(ex, ey))));
        }
    }
    for (a, ea) in e1.iter().enumerate() {
        for (x, ex) in e0.iter().enumerate() {
            let ta = s.t1(ea);
            let tx = s.t0(ex);
            let mut inner = s.l10(&ta, ex);
            axpy(&mut inner, &Rational::one(), &s.l10(ea, &tx));
            axpy(&mut inner, weight, &s.l10(ea, ex));
            let defect = sub_vectors(&s.t1(&inner), &s.l10(&ta, &tx));
            v.check("(iii)", vec![a, x], sub_vectors(&defect, &s.t2(&s.d(ea), ex)));

            let mut inner = s.l01(ex, &ta);
            axpy(&mut inner, &Rational::one(), &s.l01(&tx, ea));
            axpy(&mut inner, weight, &s.l01(ex, ea));
            let defect = sub_vectors(&s.t1(&inner), &s.l01(&tx, &ta));
            v.check("(iv)", vec![x, a], sub_vectors(&defect, &s.t2(ex, &s.d(ea))));
        }
    }
    for (x1, e1x) in e0.iter().enumerate() {
        for (x2, e2x) in e0.iter().enumerate() {
            for (x3, e3x) in e0.iter().enumerate() {
                v.check("(v)", vec![x1, x2, x3], coherence(t, weight, e1x, e2x, e3x));
            }
        }
    }
    Ok(v)
}

/// A skeletal algebra read as a Rota-Baxter pre-Lie algebra, a Rota-Baxter
/// bimodule over it, and the degree-3 pair `(l3, T2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletalCocycle {
    pub algebra: RBPreLieAlgebra,
    pub module: RBBimodule,
    pub cocycle: RBACochain,
    pub is_cocycle: bool,
}

pub fn skeletal_to_cocycle(t: &TwoAlgebra, weight: &Rational) -> Result<SkeletalCocycle> {
    t.check_shape()?;
    if !t.is_skeletal() {
        return Err(Error::Invalid("two-term algebra is not skeletal (d is nonzero)".into()));
    }
    let algebra = t.base(weight)?;
    let module = t.module()?;
    let cocycle = RBACochain::new(t.l3.clone(), Some(Cochain::from_bilinear(&t.t2)))?;
    let cx = Complexes::new(&algebra, &module, Validation::Trusted)?;
    let is_cocycle = cx.rba(&cocycle)?.is_zero();
    Ok(SkeletalCocycle {
        algebra,
        module,
        cocycle,
        is_cocycle,
    })
}

/// The skeletal algebra of a degree-3 cocycle `(f, theta)`: `l3 = f`,
/// `T2 = theta`.
pub fn cocycle_to_skeletal(r: &RBPreLieAlgebra, m: &RBBimodule, c: &RBACochain) -> Result<TwoAlgebra> {
    if c.degree() != 3 {
        return Err(Error::Invalid(format!(
            "expected a degree 3 cochain, got degree {}",
            c.degree()
        )));
    }
    let cx = Complexes::new(r, m, Validation::Trusted)?;
    let dc = cx.rba(c)?;
    if !dc.pla_part.is_zero() {
        return Err(Error::NotCocycle(
            "pre-Lie component of the coboundary is nonzero".into(),
        ));
    }
    if dc.rbo_part.as_ref().is_some_and(|g| !g.is_zero()) {
        return Err(Error::NotCocycle(
            "operator component of the coboundary is nonzero".into(),
        ));
    }
    let theta = c.rbo_part.as_ref().expect("degree 3").to_bilinear();
    TwoAlgebra::skeletal(r, m, c.pla_part.clone(), theta)
}

/// A crossed module `d: g1 -> g0` of Rota-Baxter pre-Lie algebras; the
/// weight is that of `g0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    pub g0: RBPreLieAlgebra,
    pub g1_product: BilinearMap,
    /// `dim0 x dim1`.
    pub d: RationalMatrix,
    /// Left action `S(e_i)` on `g1`, one matrix per basis vector of `g0`.
    pub s: Vec<RationalMatrix>,
    /// Right action `P(e_i)`: `alpha -> alpha . e_i`.
    pub p: Vec<RationalMatrix>,
    pub t1: RationalMatrix,
}

impl CrossedModule {
    pub fn dim0(&self) -> usize {
        self.g0.dim()
    }

    pub fn dim1(&self) -> usize {
        self.t1.rows()
    }

    pub fn module(&self) -> Result<RBBimodule> {
        RBBimodule::new(
            Bimodule::new(self.dim1(), self.s.clone(), self.p.clone())?,
            self.t1.clone(),
        )
    }

    fn check_shape(&self) -> Result<()> {
        let (n0, n1) = (self.dim0(), self.dim1());
        if self.t1.cols() != n1 || (self.d.rows(), self.d.cols()) != (n0, n1) {
            return Err(Error::Dimension(format!(
                "d is {}x{} and T1 is {}x{}, expected d {n0}x{n1} and T1 square",
                self.d.rows(),
                self.d.cols(),
                self.t1.rows(),
                self.t1.cols()
            )));
        }
        let b = &self.g1_product;
        if (b.left_dim(), b.right_dim(), b.out_dim()) != (n1, n1, n1) {
            return Err(Error::Dimension(format!("product on g1 must be {n1}x{n1} -> {n1}")));
        }
        if self.s.len() != n0 || self.p.len() != n0 {
            return Err(Error::Dimension(format!("expected {n0} left and right actions")));
        }
        self.module().map(|_| ())
    }
}

/// Pre-Lie laws on both algebras, the Rota-Baxter laws on `g0` and on the
/// module `g1`, `d` a product morphism, and the compatibilities (C1), (C2).
pub fn check_crossed_module(cm: &CrossedModule) -> Result<Verdict> {
    cm.check_shape()?;
    let (n0, n1) = (cm.dim0(), cm.dim1());
    let mut v = check_pre_lie(&cm.g0.algebra);
    v.merge(check_rb_operator(&cm.g0));
    v.merge(check_rb_bimodule(&cm.g0, &cm.module()?)?);
    let mul1 = |a: &[Rational], b: &[Rational]| cm.g1_product.apply(a, b);
    let e1: Vec<Vector> = (0..n1).map(|i| unit_vector(n1, i)).collect();
    for (a, ea) in e1.iter().enumerate() {
        for (b, eb) in e1.iter().enumerate() {
            let ab = mul1(ea, eb);
            let assoc = |x: &[Rational], y: &[Rational], z: &[Rational]| {
                sub_vectors(&mul1(&mul1(x, y), z), &mul1(x, &mul1(y, z)))
            };
            for (c, ec) in e1.iter().enumerate() {
                v.check(
                    "g1 pre-Lie",
                    vec![a, b, c],
                    sub_vectors(&assoc(ea, eb, ec), &assoc(eb, ea, ec)),
                );
            }
            let (da, db) = (cm.d.column(a), cm.d.column(b));
            v.check(
                "d product",
                vec![a, b],
                sub_vectors(&cm.d.mul_vec(&ab), &cm.g0.algebra.mul(&da, &db)),
            );
            let s_da =
                cm.s.iter()
                    .zip(&da)
                    .fold(RationalMatrix::zeros(n1, n1), |acc, (m, c)| acc.add(&m.scale(c)));
            let p_db =
                cm.p.iter()
                    .zip(&db)
                    .fold(RationalMatrix::zeros(n1, n1), |acc, (m, c)| acc.add(&m.scale(c)));
            v.check("(C2) left", vec![a, b], sub_vectors(&s_da.mul_vec(eb), &ab));
            v.check("(C2) right", vec![a, b], sub_vectors(&p_db.mul_vec(ea), &ab));
        }
    }
    for x in 0..n0 {
        let ex = unit_vector(n0, x);
        for (a, ea) in e1.iter().enumerate() {
            let da = cm.d.mul_vec(ea);
            v.check(
                "(C1) left",
                vec![x, a],
                sub_vectors(&cm.d.mul_vec(&cm.s[x].mul_vec(ea)), &cm.g0.algebra.mul(&ex, &da)),
            );
            v.check(
                "(C1) right",
                vec![x, a],
                sub_vectors(&cm.d.mul_vec(&cm.p[x].mul_vec(ea)), &cm.g0.algebra.mul(&da, &ex)),
            );
        }
    }
    let lhs = cm.d.mul(&cm.t1);
    let rhs = cm.g0.operator.mul(&cm.d);
    for a in 0..n1 {
        v.check("(C1) operator", vec![a], sub_vectors(&lhs.column(a), &rhs.column(a)));
    }
    Ok(v)
}

/// The crossed module of a strict algebra, with `a .1 b = l2(d a, b)`.
pub fn strict_to_crossed(t: &TwoAlgebra, weight: &Rational) -> Result<CrossedModule> {
    t.check_shape()?;
    if !t.is_strict() {
        return Err(Error::Invalid(
            "two-term algebra is not strict (l3 or T2 is nonzero)".into(),
        ));
    }
    let n1 = t.dim1();
    let g1_product = BilinearMap::from_basis_fn(n1, n1, n1, |a, b| t.l2_01.apply(&t.d.column(a), &unit_vector(n1, b)));
    let m = t.module()?;
    Ok(CrossedModule {
        g0: t.base(weight)?,
        g1_product,
        d: t.d.clone(),
        s: m.bimodule.left().to_vec(),
        p: m.bimodule.right().to_vec(),
        t1: t.t1.clone(),
    })
}

/// The strict algebra of a valid crossed module. The product on `g1` is
/// recovered from `d` and the actions.
pub fn crossed_to_strict(cm: &CrossedModule) -> Result<TwoAlgebra> {
    let v = check_crossed_module(cm)?;
    if !v.is_ok() {
        return Err(Error::Invalid(format!(
            "not a crossed module; violated: {}",
            v.laws_violated().join(", ")
        )));
    }
    let (n0, n1) = (cm.dim0(), cm.dim1());
    let (l2_01, l2_10) = actions_to_bilinear(&cm.module()?.bimodule);
    Ok(TwoAlgebra {
        d: cm.d.clone(),
        l2_00: cm.g0.algebra.product().clone(),
        l2_01,
        l2_10,
        l3: Cochain::zero(3, n0, n1),
        t0: cm.g0.operator.clone(),
        t1: cm.t1.clone(),
        t2: BilinearMap::zero(n0, n0, n1),
    })
}
