//! Truncated one-parameter formal deformations `mu_t = sum mu_i t^i`,
//! `T_t = sum T_i t^i` of a Rota-Baxter pre-Lie algebra: order-by-order
//! validity, infinitesimals, gauge equivalence, extension to the next order
//! and trivialization.

use num_traits::Zero;

use crate::bilinear::BilinearMap;
use crate::complexes::{pla_differential, Cochain, ComplexKind, Complexes, Preimage, RBACochain};
use crate::error::{Error, Result};
use crate::exactla::{add_vectors, int, scale_vector, sub_vectors, zero_vector, Rational, RationalMatrix, Vector};
use crate::prelie::{RBBimodule, RBPreLieAlgebra, Validation};
use crate::verdict::Verdict;

/// Coefficients `mu_0..mu_N` and `T_0..T_N` of a deformation truncated at
/// order `N`, with `mu_0` and `T_0` the base structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    products: Vec<BilinearMap>,
    operators: Vec<RationalMatrix>,
}

impl TruncatedDeformation {
    pub fn new(r: &RBPreLieAlgebra, products: Vec<BilinearMap>, operators: Vec<RationalMatrix>) -> Result<Self> {
        if products.is_empty() || products.len() != operators.len() {
            return Err(Error::Dimension(format!(
                "{} product coefficients and {} operator coefficients",
                products.len(),
                operators.len()
            )));
        }
        let d = r.dim();
        for (i, (mu, t)) in products.iter().zip(&operators).enumerate() {
            if (mu.left_dim(), mu.right_dim(), mu.out_dim()) != (d, d, d) || (t.rows(), t.cols()) != (d, d) {
                return Err(Error::Dimension(format!(
                    "coefficient {i} does not act on a {d}-dimensional space"
                )));
            }
        }
        if &products[0] != r.algebra.product() || operators[0] != r.operator {
            return Err(Error::Invalid(
                "order-0 coefficients differ from the base structure".into(),
            ));
        }
        Ok(Self { products, operators })
    }

    /// `mu_i = 0`, `T_i = 0` for `0 < i <= order`.
    pub fn trivial(r: &RBPreLieAlgebra, order: usize) -> Self {
        let d = r.dim();
        let mut products = vec![r.algebra.product().clone()];
        let mut operators = vec![r.operator.clone()];
        for _ in 0..order {
            products.push(BilinearMap::zero(d, d, d));
            operators.push(RationalMatrix::zeros(d, d));
        }
        Self { products, operators }
    }

    /// Deformation of the operator alone, `mu_i = 0` for `i > 0`.
    pub fn of_operator(r: &RBPreLieAlgebra, operators: Vec<RationalMatrix>) -> Result<Self> {
        let d = r.dim();
        let mut products = vec![r.algebra.product().clone()];
        products.extend((1..operators.len()).map(|_| BilinearMap::zero(d, d, d)));
        Self::new(r, products, operators)
    }

    pub fn order(&self) -> usize {
        self.products.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    pub fn products(&self) -> &[BilinearMap] {
        &self.products
    }

    pub fn operators(&self) -> &[RationalMatrix] {
        &self.operators
    }

    pub fn product(&self, i: usize) -> &BilinearMap {
        &self.products[i]
    }

    pub fn operator(&self, i: usize) -> &RationalMatrix {
        &self.operators[i]
    }

    /// Appends the order `N + 1` coefficients.
    pub fn extended(&self, product: BilinearMap, operator: RationalMatrix) -> Result<Self> {
        let d = self.dim();
        if (product.left_dim(), product.right_dim(), product.out_dim()) != (d, d, d)
            || (operator.rows(), operator.cols()) != (d, d)
        {
            return Err(Error::Dimension(format!(
                "new coefficients do not act on a {d}-dimensional space"
            )));
        }
        let mut out = self.clone();
        out.products.push(product);
        out.operators.push(operator);
        Ok(out)
    }

    pub fn truncated(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.products.len());
        Self {
            products: self.products[..keep].to_vec(),
            operators: self.operators[..keep].to_vec(),
        }
    }

    fn check_base(&self, r: &RBPreLieAlgebra) -> Result<()> {
        if self.dim() != r.dim() || &self.products[0] != r.algebra.product() || self.operators[0] != r.operator {
            return Err(Error::Invalid("deformation is not based on the given structure".into()));
        }
        Ok(())
    }
}

/// A gauge series `psi_t = sum psi_i t^i` with `psi_0 = Id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeSeries {
    maps: Vec<RationalMatrix>,
}

impl GaugeSeries {
    pub fn new(maps: Vec<RationalMatrix>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::Dimension("empty gauge series".into()));
        };
        let d = first.rows();
        if maps.iter().any(|m| (m.rows(), m.cols()) != (d, d)) {
            return Err(Error::Dimension("gauge coefficients of different sizes".into()));
        }
        if *first != RationalMatrix::identity(d) {
            return Err(Error::Invalid("gauge series must start with the identity".into()));
        }
        Ok(Self { maps })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut maps = vec![RationalMatrix::identity(dim)];
        maps.extend((0..order).map(|_| RationalMatrix::zeros(dim, dim)));
        Self { maps }
    }

    /// `Id + psi t^k`, truncated at `order`.
    pub fn monomial(psi: RationalMatrix, k: usize, order: usize) -> Self {
        let d = psi.rows();
        let mut out = Self::identity(d, order);
        if k >= 1 && k <= order {
            out.maps[k] = psi;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.maps[0].rows()
    }

    pub fn maps(&self) -> &[RationalMatrix] {
        &self.maps
    }

    /// Coefficients of `psi_t^(-1)`: `phi_0 = Id`, `phi_n = -sum_{k=1..n} psi_k phi_(n-k)`.
    pub fn inverse(&self) -> Self {
        let d = self.dim();
        let mut inv = vec![RationalMatrix::identity(d)];
        for n in 1..self.maps.len() {
            let mut acc = RationalMatrix::zeros(d, d);
            for k in 1..=n {
                acc = acc.sub(&self.maps[k].mul(&inv[n - k]));
            }
            inv.push(acc);
        }
        Self { maps: inv }
    }

    /// The series product `self * other`, truncated at the smaller order.
    pub fn compose(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let d = self.dim();
        let maps = (0..=order)
            .map(|n| {
                (0..=n).fold(RationalMatrix::zeros(d, d), |acc, k| {
                    acc.add(&self.maps[k].mul(&other.maps[n - k]))
                })
            })
            .collect();
        Self { maps }
    }

    pub fn truncated(&self, order: usize) -> Self {
        Self {
            maps: self.maps[..(order + 1).min(self.maps.len())].to_vec(),
        }
    }
}

/// Per-order outcome of [`check_deformation`]; entry `n` holds the
/// violations of the order-`n` product and operator equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationCheck {
    pub orders: Vec<Verdict>,
}

impl DeformationCheck {
    pub fn is_ok(&self) -> bool {
        self.orders.iter().all(Verdict::is_ok)
    }

    /// Whether orders `0..=n` all hold.
    pub fn ok_through(&self, n: usize) -> bool {
        self.orders.iter().take(n + 1).all(Verdict::is_ok)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.orders.iter().position(|v| !v.is_ok())
    }
}

/// Coefficient of `t^n` in `mu_t(mu_t(a, b), c) - mu_t(a, mu_t(b, c))`
/// minus the same with `a` and `b` swapped, on basis vectors.
fn product_defect(mus: &[BilinearMap], n: usize, a: usize, b: usize, c: usize) -> Vector {
    let d = mus[0].out_dim();
    let mut out = zero_vector(d);
    for i in 0..=n {
        let (outer, inner) = (&mus[i], &mus[n - i]);
        out = add_vectors(&out, &outer.apply_basis_right(inner.on_basis(a, b), c));
        out = sub_vectors(&out, &outer.apply_basis_left(a, inner.on_basis(b, c)));
        out = sub_vectors(&out, &outer.apply_basis_right(inner.on_basis(b, a), c));
        out = add_vectors(&out, &outer.apply_basis_left(b, inner.on_basis(a, c)));
    }
    out
}

/// Coefficient of `t^n` in
/// `mu_t(T_t a, T_t b) - T_t(mu_t(a, T_t b) + mu_t(T_t a, b) + lambda mu_t(a, b))`.
fn operator_defect(
    mus: &[BilinearMap],
    ts: &[RationalMatrix],
    weight: &Rational,
    n: usize,
    a: usize,
    b: usize,
) -> Vector {
    let d = mus[0].out_dim();
    let mut out = zero_vector(d);
    let tcol = |k: usize, x: usize| ts[k].column(x);
    for i in 0..=n {
        for j in 0..=n - i {
            let k = n - i - j;
            out = add_vectors(&out, &mus[i].apply(&tcol(j, a), &tcol(k, b)));
            let right = mus[j].apply_basis_left(a, &tcol(k, b));
            let left = mus[j].apply_basis_right(&tcol(k, a), b);
            let inner = add_vectors(&right, &left);
            out = sub_vectors(&out, &ts[i].mul_vec(&inner));
        }
        if !weight.is_zero() {
            let last = ts[i].mul_vec(mus[n - i].on_basis(a, b));
            out = sub_vectors(&out, &scale_vector(weight, &last));
        }
    }
    out
}

fn order_verdict(r: &RBPreLieAlgebra, def: &TruncatedDeformation, n: usize) -> Verdict {
    let d = r.dim();
    let mut v = Verdict::ok();
    for a in 0..d {
        for b in a + 1..d {
            for c in 0..d {
                v.check(
                    "deformed pre-Lie",
                    vec![a, b, c],
                    product_defect(&def.products, n, a, b, c),
                );
            }
        }
    }
    for a in 0..d {
        for b in 0..d {
            v.check(
                "deformed Rota-Baxter",
                vec![a, b],
                operator_defect(&def.products, &def.operators, &r.weight, n, a, b),
            );
        }
    }
    v
}

/// Checks the coefficient of every `t^n`, `n <= N`, in the pre-Lie identity
/// and the Rota-Baxter identity of `(mu_t, T_t)`.
pub fn check_deformation(r: &RBPreLieAlgebra, def: &TruncatedDeformation) -> Result<DeformationCheck> {
    def.check_base(r)?;
    Ok(DeformationCheck {
        orders: (0..=def.order()).map(|n| order_verdict(r, def, n)).collect(),
    })
}

/// The order-1 coefficients as a degree-2 cone cochain with the regular
/// module, and whether they form a cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infinitesimal {
    pub cochain: RBACochain,
    pub is_cocycle: bool,
}

pub fn infinitesimal(r: &RBPreLieAlgebra, def: &TruncatedDeformation) -> Result<Infinitesimal> {
    def.check_base(r)?;
    if def.order() < 1 {
        return Err(Error::Invalid("deformation has no order-1 term".into()));
    }
    let v = order_verdict(r, def, 1);
    if !v.is_ok() {
        return Err(Error::Invalid(format!(
            "order-1 equations fail: {}",
            v.laws_violated().join(", ")
        )));
    }
    let cochain = first_order_pair(def.product(1), def.operator(1))?;
    let m = RBBimodule::regular(r);
    let cx = Complexes::new(r, &m, Validation::Trusted)?;
    let is_cocycle = cx.rba(&cochain)?.is_zero();
    Ok(Infinitesimal { cochain, is_cocycle })
}

fn first_order_pair(mu: &BilinearMap, t: &RationalMatrix) -> Result<RBACochain> {
    RBACochain::new(Cochain::from_bilinear(mu), Some(Cochain::from_linear(t)))
}

/// `(psi_t^(-1) mu_t (psi_t x psi_t), psi_t^(-1) T_t psi_t)` truncated at the
/// order of the deformation.
pub fn gauge_transform(
    r: &RBPreLieAlgebra,
    def: &TruncatedDeformation,
    psi: &GaugeSeries,
) -> Result<TruncatedDeformation> {
    def.check_base(r)?;
    let order = def.order();
    if psi.order() < order {
        return Err(Error::Invalid(format!(
            "gauge series of order {} cannot transform a deformation of order {order}",
            psi.order()
        )));
    }
    if psi.dim() != def.dim() {
        return Err(Error::Dimension(
            "gauge series and deformation act on different spaces".into(),
        ));
    }
    let d = def.dim();
    let ps = &psi.maps;
    let inv = psi.inverse().maps;
    let inner: Vec<BilinearMap> = (0..=order)
        .map(|n| {
            let mut acc = BilinearMap::zero(d, d, d);
            for b in 0..=n {
                for c in 0..=n - b {
                    let e = n - b - c;
                    acc = acc.add(&def.products[b].precompose(&ps[c], &ps[e]));
                }
            }
            acc
        })
        .collect();
    let products = (0..=order)
        .map(|n| {
            (0..=n).fold(BilinearMap::zero(d, d, d), |acc, a| {
                acc.add(&inner[n - a].then(&inv[a]))
            })
        })
        .collect();
    let operators = (0..=order)
        .map(|n| {
            let mut acc = RationalMatrix::zeros(d, d);
            for a in 0..=n {
                for b in 0..=n - a {
                    acc = acc.add(&inv[a].mul(&def.operators[b]).mul(&ps[n - a - b]));
                }
            }
            acc
        })
        .collect();
    Ok(TruncatedDeformation { products, operators })
}

/// Result of trying to extend a deformation valid to order `n - 1` by one
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NextOrder {
    /// The order being solved for.
    pub order: usize,
    /// The pair `(P, Q)` that `d(mu_n, T_n)` must equal: `P` is the
    /// order-`n` pre-Lie defect and `Q` the order-`n` Rota-Baxter defect of
    /// the lower-order data, both with `mu_n = T_n = 0`.
    pub obstruction: RBACochain,
    /// Whether the obstruction pair is closed under the cone differential.
    pub obstruction_is_cocycle: bool,
    pub outcome: NextOrderOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NextOrderOutcome {
    Solved {
        product: BilinearMap,
        operator: RationalMatrix,
    },
    /// Class of the obstruction modulo the image of the degree-2 cone
    /// differential, on the complement coordinates.
    Obstructed { complement: Vec<usize>, class: Vector },
}

impl NextOrder {
    pub fn is_solved(&self) -> bool {
        matches!(self.outcome, NextOrderOutcome::Solved { .. })
    }

    /// The extended deformation when a solution was found.
    pub fn extend(&self, def: &TruncatedDeformation) -> Option<TruncatedDeformation> {
        match &self.outcome {
            NextOrderOutcome::Solved { product, operator } => def.extended(product.clone(), operator.clone()).ok(),
            NextOrderOutcome::Obstructed { .. } => None,
        }
    }
}

/// Order-`n` obstruction of the data `mu_0..mu_(n-1)`, `T_0..T_(n-1)`: the
/// defects of the order-`n` equations with the unknown coefficients set to
/// zero, as a degree-3 cone cochain.
pub fn obstruction(r: &RBPreLieAlgebra, def: &TruncatedDeformation) -> Result<RBACochain> {
    def.check_base(r)?;
    let d = r.dim();
    let n = def.order() + 1;
    let padded = def.extended(BilinearMap::zero(d, d, d), RationalMatrix::zeros(d, d))?;
    let p = Cochain::from_fn(3, d, d, |k| product_defect(&padded.products, n, k[0], k[1], k[2]));
    let q = Cochain::from_fn(2, d, d, |k| {
        operator_defect(&padded.products, &padded.operators, &r.weight, n, k[0], k[1])
    });
    RBACochain::new(p, Some(q))
}

/// Solves for `(mu_n, T_n)` with `n = N + 1`. The order-`n` equations read
/// `d(mu_n, T_n) = obstruction`, a linear system in the cone complex of the
/// regular module.
pub fn solve_next_order(r: &RBPreLieAlgebra, def: &TruncatedDeformation) -> Result<NextOrder> {
    let check = check_deformation(r, def)?;
    if let Some(bad) = check.first_failure() {
        return Err(Error::Invalid(format!("deformation fails at order {bad}")));
    }
    let d = r.dim();
    let m = RBBimodule::regular(r);
    let cx = Complexes::new(r, &m, Validation::Trusted)?;
    let obs = obstruction(r, def)?;
    let obstruction_is_cocycle = cx.rba(&obs)?.is_zero();
    let target = cx.cone_to_coords(&obs);
    let outcome = match cx.solve_coboundary(ComplexKind::Rba, 2, &target)? {
        Preimage::Found(x) => {
            let pair = cx.cone_from_coords(2, &x);
            let product = pair.pla_part.to_bilinear();
            let operator = pair.rbo_part.expect("degree 2").to_linear();
            debug_assert_eq!((product.out_dim(), operator.rows()), (d, d));
            NextOrderOutcome::Solved { product, operator }
        }
        Preimage::Class { complement, coords } => NextOrderOutcome::Obstructed {
            complement,
            class: coords,
        },
    };
    Ok(NextOrder {
        order: def.order() + 1,
        obstruction: obs,
        obstruction_is_cocycle,
        outcome,
    })
}

/// Outcome of [`trivialize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trivialization {
    /// `gauge` is a formal isomorphism from the trivial deformation to the
    /// input: `gauge_transform(input, gauge)` is trivial.
    Trivial { gauge: GaugeSeries },
    /// At `order` the leading coefficients are a cocycle that is not a
    /// coboundary; `class` gives its coordinates on the complement of the
    /// degree-1 coboundaries.
    Obstructed {
        order: usize,
        leading: RBACochain,
        complement: Vec<usize>,
        class: Vector,
    },
}

/// Removes the deformation order by order. At order `k` the leading pair
/// `(mu_k, T_k)` is written as `d(psi', x)` with `x` in the degree-0 space;
/// then `psi_k = psi' + delta(x)` satisfies `(mu_k, T_k) = d(psi_k, 0)` and
/// the gauge `Id - psi_k t^k` kills order `k`.
pub fn trivialize(r: &RBPreLieAlgebra, def: &TruncatedDeformation) -> Result<Trivialization> {
    let check = check_deformation(r, def)?;
    if let Some(bad) = check.first_failure() {
        return Err(Error::Invalid(format!("deformation fails at order {bad}")));
    }
    let d = r.dim();
    let order = def.order();
    let m = RBBimodule::regular(r);
    let cx = Complexes::new(r, &m, Validation::Trusted)?;
    let mut total = GaugeSeries::identity(d, order);
    let mut current = def.clone();
    for k in 1..=order {
        let leading = first_order_pair(current.product(k), current.operator(k))?;
        match cx.solve_coboundary(ComplexKind::Rba, 1, &cx.cone_to_coords(&leading))? {
            Preimage::Class { complement, coords } => {
                return Ok(Trivialization::Obstructed {
                    order: k,
                    leading,
                    complement,
                    class: coords,
                })
            }
            Preimage::Found(x) => {
                let pre = cx.cone_from_coords(1, &x);
                let shift = pla_differential(&r.algebra, &m.bimodule, pre.rbo_part.as_ref().expect("degree 1"))?;
                let psi_k = pre.pla_part.add(&shift)?.to_linear();
                let step = GaugeSeries::monomial(psi_k.scale(&int(-1)), k, order);
                current = gauge_transform(r, &current, &step)?;
                debug_assert!(current.product(k).is_zero() && current.operator(k).is_zero());
                total = total.compose(&step);
            }
        }
    }
    Ok(Trivialization::Trivial { gauge: total })
}

/// Whether `T_1` is a 1-cocycle of the operator complex with coefficients
/// in the regular module, that is, whether `T + t T_1` is a Rota-Baxter
/// operator to first order. Violations are reported on basis pairs.
pub fn rbo_cocycle_check(r: &RBPreLieAlgebra, t1: &RationalMatrix) -> Result<Verdict> {
    if (t1.rows(), t1.cols()) != (r.dim(), r.dim()) {
        return Err(Error::Dimension(format!("operator must be {0} x {0}", r.dim())));
    }
    let m = RBBimodule::regular(r);
    let cx = Complexes::new(r, &m, Validation::Trusted)?;
    let dt = cx.rbo(&Cochain::from_linear(t1))?;
    let mut v = Verdict::ok();
    for a in 0..r.dim() {
        for b in 0..r.dim() {
            v.check("operator cocycle", vec![a, b], dt.get(&[a], b).to_vec());
        }
    }
    Ok(v)
}
