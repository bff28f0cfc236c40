//! Abelian extensions `0 -> M -> E -> g -> 0` of Rota-Baxter pre-Lie
//! algebras: building `E` from a pair `(psi, chi)`, reading the pair back
//! from a section, comparing sections, and the isomorphism induced by a
//! coboundary.
//!
//! A built total space has basis `e_1..e_d` of `g` followed by `f_1..f_m` of
//! `M`; the inclusion and projection are the block maps.

use crate::bilinear::BilinearMap;
use crate::complexes::{pla_differential, Cochain, ComplexKind, Complexes, Preimage, RBACochain};
use crate::error::{Error, Result};
use crate::exactla::{sub_vectors, unit_vector, zero_vector, Echelon, Rational, RationalMatrix, Vector};
use crate::prelie::{
    check_morphism, check_pre_lie, check_rb_operator, Bimodule, PreLieAlgebra, RBBimodule, RBPreLieAlgebra, Validation,
};
use crate::verdict::Verdict;

/// `psi: g x g -> M` and `chi: g -> M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocyclePair {
    pub psi: BilinearMap,
    /// `m x d`; column `a` is `chi(e_a)`.
    pub chi: RationalMatrix,
}

impl CocyclePair {
    pub fn new(psi: BilinearMap, chi: RationalMatrix) -> Result<Self> {
        let (d, m) = (psi.left_dim(), psi.out_dim());
        if psi.right_dim() != d || (chi.rows(), chi.cols()) != (m, d) {
            return Err(Error::Dimension(format!(
                "psi is {}x{} -> {}, chi is {}x{}",
                psi.left_dim(),
                psi.right_dim(),
                m,
                chi.rows(),
                chi.cols()
            )));
        }
        Ok(Self { psi, chi })
    }

    pub fn zero(base_dim: usize, mod_dim: usize) -> Self {
        Self {
            psi: BilinearMap::zero(base_dim, base_dim, mod_dim),
            chi: RationalMatrix::zeros(mod_dim, base_dim),
        }
    }

    pub fn base_dim(&self) -> usize {
        self.psi.left_dim()
    }

    pub fn mod_dim(&self) -> usize {
        self.psi.out_dim()
    }

    pub fn to_cochain(&self) -> RBACochain {
        RBACochain {
            pla_part: Cochain::from_bilinear(&self.psi),
            rbo_part: Some(Cochain::from_linear(&self.chi)),
        }
    }

    pub fn from_cochain(c: &RBACochain) -> Result<Self> {
        let Some(chi) = &c.rbo_part else {
            return Err(Error::Invalid("a cocycle pair has degree 2".into()));
        };
        if c.degree() != 2 {
            return Err(Error::Invalid(format!(
                "a cocycle pair has degree 2, got {}",
                c.degree()
            )));
        }
        Self::new(c.pla_part.to_bilinear(), chi.to_linear())
    }

    fn check_shape(&self, d: usize, m: usize) -> Result<()> {
        if (self.base_dim(), self.mod_dim()) != (d, m) {
            return Err(Error::Dimension(format!(
                "pair over ({}, {}) used with algebra of dimension {d} and module of dimension {m}",
                self.base_dim(),
                self.mod_dim()
            )));
        }
        Ok(())
    }
}

/// An extension `0 -> (M, 0, T_M) -> E -> g -> 0` stored by the structure
/// constants of `E` and the two maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionData {
    pub base: RBPreLieAlgebra,
    /// `T_M` on the abelian kernel.
    pub kernel_operator: RationalMatrix,
    pub total: RBPreLieAlgebra,
    /// `i: M -> E`, `(d + m) x m`.
    pub inclusion: RationalMatrix,
    /// `p: E -> g`, `d x (d + m)`.
    pub projection: RationalMatrix,
}

impl ExtensionData {
    pub fn new(
        base: RBPreLieAlgebra,
        kernel_operator: RationalMatrix,
        total: RBPreLieAlgebra,
        inclusion: RationalMatrix,
        projection: RationalMatrix,
    ) -> Result<Self> {
        let (d, n) = (base.dim(), total.dim());
        let m = kernel_operator.rows();
        if kernel_operator.cols() != m
            || (inclusion.rows(), inclusion.cols()) != (n, m)
            || (projection.rows(), projection.cols()) != (d, n)
        {
            return Err(Error::Dimension(format!(
                "inclusion {}x{}, projection {}x{}, kernel operator {}x{} for base {d} and total {n}",
                inclusion.rows(),
                inclusion.cols(),
                projection.rows(),
                projection.cols(),
                kernel_operator.rows(),
                kernel_operator.cols()
            )));
        }
        Ok(Self {
            base,
            kernel_operator,
            total,
            inclusion,
            projection,
        })
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_operator.rows()
    }

    /// `s(a) = (a, 0)` in the block basis.
    pub fn canonical_section(&self) -> Section {
        let d = self.base_dim();
        Section {
            map: RationalMatrix::from_fn(self.total.dim(), d, |r, c| {
                if r == c {
                    num_traits::One::one()
                } else {
                    num_traits::Zero::zero()
                }
            }),
        }
    }
}

/// A linear map `s: g -> E` with `p s = Id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    /// `(d + m) x d`; column `a` is `s(e_a)`.
    pub map: RationalMatrix,
}

impl Section {
    pub fn new(map: RationalMatrix) -> Self {
        Self { map }
    }

    /// `s + i gamma` for `gamma: g -> M`.
    pub fn perturbed(&self, e: &ExtensionData, gamma: &RationalMatrix) -> Self {
        Self {
            map: self.map.add(&e.inclusion.mul(gamma)),
        }
    }
}

fn block_inclusion(d: usize, m: usize) -> RationalMatrix {
    RationalMatrix::from_fn(d + m, m, |r, c| {
        if r == d + c {
            num_traits::One::one()
        } else {
            num_traits::Zero::zero()
        }
    })
}

fn block_projection(d: usize, m: usize) -> RationalMatrix {
    RationalMatrix::from_fn(d, d + m, |r, c| {
        if r == c {
            num_traits::One::one()
        } else {
            num_traits::Zero::zero()
        }
    })
}

/// `g + M` with `(a, u)(b, v) = (ab, av + ub + psi(a, b))` and
/// `T(a, u) = (T a, chi(a) + T_M u)`.
pub fn extension_algebra(r: &RBPreLieAlgebra, m: &RBBimodule, c: &CocyclePair) -> Result<RBPreLieAlgebra> {
    let (d, md) = (r.dim(), m.mod_dim());
    if m.base_dim() != d {
        return Err(Error::Dimension("module and algebra dimensions differ".into()));
    }
    c.check_shape(d, md)?;
    let n = d + md;
    let b = &m.bimodule;
    let product = PreLieAlgebra::from_basis_fn(n, |i, j| {
        let mut out = zero_vector(n);
        match (i < d, j < d) {
            (true, true) => {
                out[..d].clone_from_slice(r.algebra.basis_product(i, j));
                out[d..].clone_from_slice(c.psi.on_basis(i, j));
            }
            (true, false) => out[d..].clone_from_slice(&b.left()[i].column(j - d)),
            (false, true) => out[d..].clone_from_slice(&b.right()[j].column(i - d)),
            (false, false) => {}
        }
        out
    });
    let operator = RationalMatrix::from_fn(n, n, |row, col| match (row < d, col < d) {
        (true, true) => r.operator.get(row, col).clone(),
        (true, false) => num_traits::Zero::zero(),
        (false, true) => c.chi.get(row - d, col).clone(),
        (false, false) => m.operator.get(row - d, col - d).clone(),
    });
    RBPreLieAlgebra::new(product, r.weight.clone(), operator)
}

/// Output of [`build_extension`]: the extension, the axiom check of the
/// total space, and the cocycle check of the pair. The two checks agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltExtension {
    pub extension: ExtensionData,
    pub axioms: Verdict,
    pub is_cocycle: bool,
}

impl BuiltExtension {
    pub fn is_valid(&self) -> bool {
        self.axioms.is_ok()
    }
}

pub fn build_extension(r: &RBPreLieAlgebra, m: &RBBimodule, c: &CocyclePair) -> Result<BuiltExtension> {
    let total = extension_algebra(r, m, c)?;
    let (d, md) = (r.dim(), m.mod_dim());
    let mut axioms = check_pre_lie(&total.algebra);
    axioms.merge(check_rb_operator(&total));
    let cx = Complexes::new(r, m, Validation::Trusted)?;
    let is_cocycle = cx.rba(&c.to_cochain())?.is_zero();
    let extension = ExtensionData::new(
        r.clone(),
        m.operator.clone(),
        total,
        block_inclusion(d, md),
        block_projection(d, md),
    )?;
    Ok(BuiltExtension {
        extension,
        axioms,
        is_cocycle,
    })
}

/// The pair and module read off an extension through a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extracted {
    pub pair: CocyclePair,
    pub module: RBBimodule,
    pub is_cocycle: bool,
}

/// Coordinates in `M` of vectors of `E` lying in `i(M)`, relative to the
/// splitting `E = s(g) + i(M)`.
struct Splitting {
    retraction: RationalMatrix,
    inclusion: RationalMatrix,
}

impl Splitting {
    fn new(e: &ExtensionData, s: &Section) -> Result<Self> {
        let (d, n) = (e.base_dim(), e.total.dim());
        if (s.map.rows(), s.map.cols()) != (n, d) {
            return Err(Error::Dimension(format!("section must be {n}x{d}")));
        }
        if e.projection.mul(&s.map) != RationalMatrix::identity(d) {
            return Err(Error::Invalid("section is not right inverse to the projection".into()));
        }
        let joined = s.map.hstack(&e.inclusion);
        let inv = joined
            .inverse()
            .ok_or_else(|| Error::Invalid("section and inclusion do not split the total space".into()))?;
        let m = e.kernel_dim();
        let retraction = RationalMatrix::from_fn(m, n, |r, c| inv.get(d + r, c).clone());
        Ok(Self {
            retraction,
            inclusion: e.inclusion.clone(),
        })
    }

    /// `t(v)` for `v` in `i(M)`; errors when `v` has a component along `s(g)`.
    fn kernel_coords(&self, v: &[Rational], what: &str) -> Result<Vector> {
        let u = self.retraction.mul_vec(v);
        if self.inclusion.mul_vec(&u) != v {
            return Err(Error::Invalid(format!("{what} does not lie in the kernel")));
        }
        Ok(u)
    }
}

/// `psi(a, b) = s(a)s(b) - s(ab)`, `chi(a) = T s(a) - s(T a)`, and the
/// actions `a u = s(a) i(u)`, `u a = i(u) s(a)`.
pub fn extract_cocycle(e: &ExtensionData, s: &Section) -> Result<Extracted> {
    let split = Splitting::new(e, s)?;
    let (d, m) = (e.base_dim(), e.kernel_dim());
    let total = &e.total;
    let sc: Vec<Vector> = (0..d).map(|a| s.map.column(a)).collect();
    let ic: Vec<Vector> = (0..m).map(|k| e.inclusion.column(k)).collect();

    let mut psi_values = Vec::with_capacity(d * d * m);
    for a in 0..d {
        for b in 0..d {
            let v = sub_vectors(
                &total.algebra.mul(&sc[a], &sc[b]),
                &s.map.mul_vec(e.base.algebra.basis_product(a, b)),
            );
            psi_values.extend(split.kernel_coords(&v, "s(a)s(b) - s(ab)")?);
        }
    }
    let psi = BilinearMap::new(d, d, m, psi_values)?;

    let mut chi_cols = Vec::with_capacity(d);
    for (a, sa) in sc.iter().enumerate() {
        let v = sub_vectors(
            &total.apply_operator(sa),
            &s.map.mul_vec(&e.base.apply_operator(&unit_vector(d, a))),
        );
        chi_cols.push(split.kernel_coords(&v, "T s(a) - s(T a)")?);
    }
    let chi = RationalMatrix::from_columns(&chi_cols, m)?;

    let mut left = Vec::with_capacity(d);
    let mut right = Vec::with_capacity(d);
    for sa in &sc {
        let mut lcols = Vec::with_capacity(m);
        let mut rcols = Vec::with_capacity(m);
        for u in &ic {
            lcols.push(split.kernel_coords(&total.algebra.mul(sa, u), "s(a) i(u)")?);
            rcols.push(split.kernel_coords(&total.algebra.mul(u, sa), "i(u) s(a)")?);
        }
        left.push(RationalMatrix::from_columns(&lcols, m)?);
        right.push(RationalMatrix::from_columns(&rcols, m)?);
    }
    let module = RBBimodule::new(Bimodule::new(m, left, right)?, e.kernel_operator.clone())?;
    let pair = CocyclePair::new(psi, chi)?;
    let cx = Complexes::new(&e.base, &module, Validation::Trusted)?;
    let is_cocycle = cx.rba(&pair.to_cochain())?.is_zero();
    Ok(Extracted {
        pair,
        module,
        is_cocycle,
    })
}

/// Comparison of the data extracted through two sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionComparison {
    /// `gamma = s1 - s2`, as a map `g -> M`.
    pub gamma: RationalMatrix,
    pub same_module: bool,
    /// Whether `pair_1 - pair_2 = d(gamma)`.
    pub differ_by_coboundary: bool,
}

impl SectionComparison {
    pub fn is_ok(&self) -> bool {
        self.same_module && self.differ_by_coboundary
    }
}

/// The cone coboundary `(delta gamma, -Phi gamma)` of a map `gamma: g -> M`.
pub fn pair_coboundary(r: &RBPreLieAlgebra, m: &RBBimodule, gamma: &RationalMatrix) -> Result<CocyclePair> {
    let cx = Complexes::new(r, m, Validation::Trusted)?;
    let g = Cochain::from_linear(gamma);
    let c = RBACochain::new(g, Some(Cochain::zero(0, r.dim(), m.mod_dim())))?;
    CocyclePair::from_cochain(&cx.rba(&c)?)
}

pub fn sections_same_class(e: &ExtensionData, s1: &Section, s2: &Section) -> Result<SectionComparison> {
    let x1 = extract_cocycle(e, s1)?;
    let x2 = extract_cocycle(e, s2)?;
    let split = Splitting::new(e, s2)?;
    let d = e.base_dim();
    let diff = s1.map.sub(&s2.map);
    let cols = (0..d)
        .map(|a| split.kernel_coords(&diff.column(a), "s1(a) - s2(a)"))
        .collect::<Result<Vec<_>>>()?;
    let gamma = RationalMatrix::from_columns(&cols, e.kernel_dim())?;
    let same_module = x1.module == x2.module;
    let cob = pair_coboundary(&e.base, &x2.module, &gamma)?;
    let differ_by_coboundary = x1.pair.psi == x2.pair.psi.add(&cob.psi) && x1.pair.chi == x2.pair.chi.add(&cob.chi);
    Ok(SectionComparison {
        gamma,
        same_module,
        differ_by_coboundary,
    })
}

/// An isomorphism `zeta(a, u) = (a, u - gamma(a))` from the extension of
/// `c2` to the extension of `c1`, with the checks it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionIsomorphism {
    pub gamma: RationalMatrix,
    pub zeta: RationalMatrix,
    /// Morphism laws, and the two commuting triangles with the inclusion and
    /// projection.
    pub verdict: Verdict,
}

/// Finds `gamma` with `c1 - c2 = (delta gamma, -Phi gamma)`, or `None` when
/// the pairs are not cohomologous. The degree-0 part `x` of a cone preimage
/// `d(gamma', x) = c1 - c2` is folded in as `gamma = gamma' + delta x`.
pub fn iso_from_coboundary(
    r: &RBPreLieAlgebra,
    m: &RBBimodule,
    c1: &CocyclePair,
    c2: &CocyclePair,
) -> Result<Option<ExtensionIsomorphism>> {
    let (d, md) = (r.dim(), m.mod_dim());
    c1.check_shape(d, md)?;
    c2.check_shape(d, md)?;
    let cx = Complexes::new(r, m, Validation::Trusted)?;
    for (name, c) in [("first", c1), ("second", c2)] {
        if !cx.rba(&c.to_cochain())?.is_zero() {
            return Err(Error::NotCocycle(format!("{name} pair")));
        }
    }
    let diff = c1.to_cochain().sub(&c2.to_cochain())?;
    let x = match cx.solve_coboundary(ComplexKind::Rba, 1, &cx.cone_to_coords(&diff))? {
        Preimage::Found(x) => x,
        Preimage::Class { .. } => return Ok(None),
    };
    let pre = cx.cone_from_coords(1, &x);
    let shift = pla_differential(&r.algebra, &m.bimodule, pre.rbo_part.as_ref().expect("degree 1"))?;
    let gamma = pre.pla_part.add(&shift)?.to_linear();
    debug_assert_eq!(pair_coboundary(r, m, &gamma)?.to_cochain(), diff);

    let n = d + md;
    let zeta = RationalMatrix::from_fn(n, n, |row, col| {
        if row == col {
            num_traits::One::one()
        } else if row >= d && col < d {
            -gamma.get(row - d, col).clone()
        } else {
            num_traits::Zero::zero()
        }
    });
    let e1 = extension_algebra(r, m, c1)?;
    let e2 = extension_algebra(r, m, c2)?;
    let mut verdict = check_morphism(&e2, &e1, &zeta)?;
    let (inc, proj) = (block_inclusion(d, md), block_projection(d, md));
    let zi = zeta.mul(&inc);
    for k in 0..md {
        verdict.check("fixes kernel", vec![k], sub_vectors(&zi.column(k), &inc.column(k)));
    }
    let pz = proj.mul(&zeta);
    for a in 0..n {
        verdict.check("covers base", vec![a], sub_vectors(&pz.column(a), &proj.column(a)));
    }
    if zeta.inverse().is_none() {
        verdict.push("invertible", vec![], Vec::new());
    }
    Ok(Some(ExtensionIsomorphism { gamma, zeta, verdict }))
}

/// Checks that `0 -> M -> E -> g -> 0` is an abelian extension of
/// Rota-Baxter pre-Lie algebras.
pub fn check_extension(e: &ExtensionData) -> Verdict {
    let mut v = Verdict::ok();
    let (d, m, n) = (e.base_dim(), e.kernel_dim(), e.total.dim());
    let total = &e.total;
    if total.weight != e.base.weight {
        v.flag("total space and base have different weights");
    }
    let mut axioms = check_pre_lie(&total.algebra);
    axioms.merge(check_rb_operator(total));
    for violation in axioms.violations {
        v.push("total space", violation.basis, violation.defect);
    }

    if n != d + m {
        v.push("exactness", vec![], Vec::new());
    }
    let pi = e.projection.mul(&e.inclusion);
    for k in 0..m {
        v.check("exactness", vec![k], pi.column(k));
    }
    if Echelon::new(&e.inclusion).rank() != m {
        v.push("inclusion injective", vec![], Vec::new());
    }
    if Echelon::new(&e.projection).rank() != d {
        v.push("projection surjective", vec![], Vec::new());
    }

    let ic: Vec<Vector> = (0..m).map(|k| e.inclusion.column(k)).collect();
    for k in 0..m {
        for l in 0..m {
            v.check("abelian kernel", vec![k, l], total.algebra.mul(&ic[k], &ic[l]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = e.projection.mul_vec(total.algebra.basis_product(x, y));
            let rhs = e.base.algebra.mul(&e.projection.column(x), &e.projection.column(y));
            v.check("projection product", vec![x, y], sub_vectors(&lhs, &rhs));
        }
    }
    let top = total
        .operator
        .mul(&e.inclusion)
        .sub(&e.inclusion.mul(&e.kernel_operator));
    for k in 0..m {
        v.check("operator square on kernel", vec![k], top.column(k));
    }
    let bottom = e
        .projection
        .mul(&total.operator)
        .sub(&e.base.operator.mul(&e.projection));
    for x in 0..n {
        v.check("operator square on base", vec![x], bottom.column(x));
    }
    v
}
