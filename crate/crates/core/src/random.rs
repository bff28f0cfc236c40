//! Seeded generators of valid random structures for property tests and
//! benchmarks. Every structure is built from a family known to satisfy the
//! axioms and then re-checked, so a construction slip panics instead of
//! producing an invalid fixture.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bilinear::BilinearMap;
use crate::complexes::{cochain_dim, Cochain};
use crate::exactla::{int, rat, zero_vector, Echelon, Rational, RationalMatrix, Vector};
use crate::prelie::{
    change_module_basis, change_of_basis, check_bimodule, check_pre_lie, check_rb_bimodule, check_rb_operator,
    star_algebra, Bimodule, PreLieAlgebra, RBBimodule, RBPreLieAlgebra, Validation,
};
use crate::twoalg::CrossedModule;

/// Random source for structures and cochains.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `p/q` with `|p| <= 3` and `q` in `1..=3`.
    pub fn small_rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-3..=3);
        let q = self.rng.gen_range(1..=3);
        rat(p, q)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let q = self.small_rational();
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// Small integer in `-2..=2`, used where entry growth must stay low.
    pub fn small_int(&mut self) -> Rational {
        int(self.rng.gen_range(-2..=2))
    }

    pub fn weight(&mut self) -> Rational {
        let choices = [int(0), int(1), int(-1), int(2), rat(1, 2), rat(-7, 3)];
        if self.rng.gen_bool(0.8) {
            choices.choose(&mut self.rng).expect("nonempty").clone()
        } else {
            self.small_rational()
        }
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        (0..n).map(|_| self.small_rational()).collect()
    }

    /// Each entry is nonzero with probability `density`.
    pub fn sparse_vector(&mut self, n: usize, density: f64) -> Vector {
        (0..n)
            .map(|_| {
                if self.rng.gen_bool(density) {
                    self.nonzero_rational()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix::from_fn(rows, cols, |_, _| self.small_rational())
    }

    fn int_matrix(&mut self, rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix::from_fn(rows, cols, |_, _| self.small_int())
    }

    /// Invertible matrix with small entries: a permuted product of unit
    /// lower and upper triangular factors.
    pub fn invertible_matrix(&mut self, n: usize) -> RationalMatrix {
        let lower = RationalMatrix::from_fn(n, n, |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Equal => Rational::one(),
            std::cmp::Ordering::Greater => int(self.rng.gen_range(-1..=1)),
            std::cmp::Ordering::Less => Rational::zero(),
        });
        let upper = RationalMatrix::from_fn(n, n, |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Equal => {
                if self.rng.gen_bool(0.5) {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            }
            std::cmp::Ordering::Less => int(self.rng.gen_range(-1..=1)),
            std::cmp::Ordering::Greater => Rational::zero(),
        });
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let p = RationalMatrix::from_fn(n, n, |r, c| {
            if perm[r] == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        p.mul(&lower).mul(&upper)
    }

    /// A random cochain with small entries.
    pub fn cochain(&mut self, degree: usize, base_dim: usize, mod_dim: usize) -> Cochain {
        let v = self.vector(cochain_dim(degree, base_dim, mod_dim));
        Cochain::from_values(degree, base_dim, mod_dim, v).expect("length")
    }

    /// Structure constants drawn independently; almost never pre-Lie.
    pub fn arbitrary_algebra(&mut self, dim: usize, density: f64) -> PreLieAlgebra {
        PreLieAlgebra::new(dim, self.sparse_vector(dim * dim * dim, density)).expect("length")
    }

    pub fn arbitrary_bimodule(&mut self, base_dim: usize, mod_dim: usize, density: f64) -> Bimodule {
        let mat = |g: &mut Self| {
            RationalMatrix::new(mod_dim, mod_dim, g.sparse_vector(mod_dim * mod_dim, density)).expect("length")
        };
        let left = (0..base_dim).map(|_| mat(self)).collect();
        let right = (0..base_dim).map(|_| mat(self)).collect();
        Bimodule::new(mod_dim, left, right).expect("shapes")
    }

    /// `k[x]/(x^n)` with `a o b = a D(b) + xi a b` for the derivation
    /// `D(x) = p(x)`, `p(0) = 0`. Basis `1, x, ..., x^(n-1)`.
    pub fn novikov(&mut self, n: usize) -> PreLieAlgebra {
        let p: Vector = (0..n)
            .map(|k| if k == 0 { Rational::zero() } else { self.small_int() })
            .collect();
        let xi = if self.rng.gen_bool(0.5) {
            Rational::zero()
        } else {
            self.small_int()
        };
        let mul = |a: &[Rational], b: &[Rational]| -> Vector {
            let mut out = zero_vector(n);
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if i + j < n && !(x.is_zero() || y.is_zero()) {
                        out[i + j] += x * y;
                    }
                }
            }
            out
        };
        let derive = |b: &[Rational]| -> Vector {
            // D(x^k) = k x^(k-1) p(x)
            let mut out = zero_vector(n);
            for (k, c) in b.iter().enumerate().skip(1) {
                if c.is_zero() {
                    continue;
                }
                let mut xk1 = zero_vector(n);
                xk1[k - 1] = c * int(k as i64);
                let term = mul(&xk1, &p);
                for (o, t) in out.iter_mut().zip(term) {
                    *o += t;
                }
            }
            out
        };
        PreLieAlgebra::from_basis_fn(n, |i, j| {
            let (mut a, mut b) = (zero_vector(n), zero_vector(n));
            a[i] = Rational::one();
            b[j] = Rational::one();
            let mut out = mul(&a, &derive(&b));
            let ab = mul(&a, &b);
            for (o, t) in out.iter_mut().zip(ab) {
                *o += &xi * t;
            }
            out
        })
    }

    /// Upper triangular 2x2 matrices with basis `E11, E12, E22`.
    pub fn upper_triangular() -> PreLieAlgebra {
        // E11 E11 = E11, E11 E12 = E12, E12 E22 = E12, E22 E22 = E22
        PreLieAlgebra::from_basis_fn(3, |i, j| {
            let mut out = zero_vector(3);
            match (i, j) {
                (0, 0) => out[0] = Rational::one(),
                (0, 1) | (1, 2) => out[1] = Rational::one(),
                (2, 2) => out[2] = Rational::one(),
                _ => {}
            }
            out
        })
    }

    /// A random valid pre-Lie algebra of dimension `1..=max_dim`.
    pub fn pre_lie(&mut self, max_dim: usize) -> PreLieAlgebra {
        let r = self.rb_algebra_with_weight(max_dim, int(0));
        r.algebra
    }

    /// A random valid Rota-Baxter pre-Lie algebra of dimension `1..=max_dim`.
    pub fn rb_algebra(&mut self, max_dim: usize) -> RBPreLieAlgebra {
        let w = self.weight();
        self.rb_algebra_with_weight(max_dim, w)
    }

    pub fn rb_algebra_with_weight(&mut self, max_dim: usize, weight: Rational) -> RBPreLieAlgebra {
        assert!(max_dim >= 1);
        let r = self.rb_block(max_dim, &weight, 2);
        let p = self.invertible_matrix(r.dim());
        let r = change_of_basis(&r, &p).expect("invertible");
        assert_valid_algebra(&r);
        r
    }

    fn rb_block(&mut self, max_dim: usize, w: &Rational, depth: usize) -> RBPreLieAlgebra {
        let kinds = if depth == 0 { 4 } else { 7 };
        let choice = self.rng.gen_range(0..kinds);
        let r = match choice {
            0 => {
                let n = self.rng.gen_range(1..=max_dim);
                let a = self.novikov(n);
                // span{1} and (x) are complementary subalgebras.
                let proj = RationalMatrix::from_fn(n, n, |r, c| {
                    if r == 0 && c == 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                });
                let t = self.operator_from_projection(n, w, &proj);
                RBPreLieAlgebra::new(a, w.clone(), t).expect("shape")
            }
            1 if max_dim >= 3 => {
                let a = Self::upper_triangular();
                let diag = self.rng.gen_bool(0.5);
                let proj = RationalMatrix::from_fn(3, 3, |r, c| {
                    if r == c && ((r == 1) != diag) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                });
                let t = self.operator_from_projection(3, w, &proj);
                RBPreLieAlgebra::new(a, w.clone(), t).expect("shape")
            }
            2 => {
                let n = self.rng.gen_range(1..=max_dim);
                let t = if w.is_zero() || self.rng.gen_bool(0.5) {
                    // any operator on an abelian algebra
                    self.int_matrix(n, n)
                } else {
                    RationalMatrix::identity(n).scale(&-w.clone())
                };
                RBPreLieAlgebra::new(PreLieAlgebra::abelian(n), w.clone(), t).expect("shape")
            }
            3 if max_dim >= 2 => self.semidirect(max_dim, w),
            4 if max_dim >= 2 => {
                let d1 = self.rng.gen_range(1..max_dim);
                let d2 = self.rng.gen_range(1..=max_dim - d1);
                let r1 = self.rb_block(d1, w, depth - 1);
                let r2 = self.rb_block(d2, w, depth - 1);
                direct_product(&r1, &r2)
            }
            5 => {
                let r = self.rb_block(max_dim, w, depth - 1);
                let t = RationalMatrix::identity(r.dim()).scale(&-w.clone()).sub(&r.operator);
                RBPreLieAlgebra::new(r.algebra, w.clone(), t).expect("shape")
            }
            6 => {
                let r = self.rb_block(max_dim, w, depth - 1);
                star_algebra(&r, Validation::Trusted).expect("shape")
            }
            _ => {
                let n = self.rng.gen_range(1..=max_dim);
                let a = self.novikov(n);
                let t = match self.rng.gen_range(0..2) {
                    0 => RationalMatrix::zeros(n, n),
                    _ => RationalMatrix::identity(n).scale(&-w.clone()),
                };
                RBPreLieAlgebra::new(a, w.clone(), t).expect("shape")
            }
        };
        assert_valid_algebra(&r);
        r
    }

    /// `T = -lambda P` (or `-lambda (Id - P)`) for the projection `P`
    /// onto a subalgebra along a complementary subalgebra.
    fn operator_from_projection(&mut self, n: usize, w: &Rational, proj: &RationalMatrix) -> RationalMatrix {
        let p = if self.rng.gen_bool(0.5) {
            proj.clone()
        } else {
            RationalMatrix::identity(n).sub(proj)
        };
        p.scale(&-w.clone())
    }

    /// `B x V` with `(b, v)(b', v') = (b b', b v' + v b')` and
    /// `T(b, v) = (0, f(b))`, where `f` kills `B B` unless the weight is 0.
    fn semidirect(&mut self, max_dim: usize, w: &Rational) -> RBPreLieAlgebra {
        let db_max = self.rng.gen_range(1..max_dim);
        let b = self.rb_block(db_max, w, 0).algebra;
        let db = b.dim();
        let use_regular = db + db <= max_dim && self.rng.gen_bool(0.6);
        let (v_dim, module) = if use_regular {
            (db, Bimodule::regular(&b))
        } else {
            let dv = self.rng.gen_range(1..=max_dim - db);
            (dv, Bimodule::zero(db, dv))
        };
        let total = semidirect_product(&b, &module);
        let f = if w.is_zero() {
            self.int_matrix(v_dim, db)
        } else {
            // functionals vanishing on span(B B)
            let products: Vec<Vector> = (0..db)
                .flat_map(|i| (0..db).map(move |j| (i, j)))
                .map(|(i, j)| b.basis_product(i, j).to_vec())
                .collect();
            let ann = Echelon::of_span(&products, db).kernel_basis();
            let mut f = RationalMatrix::zeros(v_dim, db);
            for a in &ann {
                let coeffs: Vector = (0..v_dim).map(|_| self.small_int()).collect();
                for (r, c) in coeffs.iter().enumerate() {
                    for (k, x) in a.iter().enumerate() {
                        let cur = f.get(r, k).clone();
                        f.set(r, k, cur + c * x);
                    }
                }
            }
            f
        };
        let n = db + v_dim;
        let t = RationalMatrix::from_fn(n, n, |r, c| {
            if r >= db && c < db {
                f.get(r - db, c).clone()
            } else {
                Rational::zero()
            }
        });
        RBPreLieAlgebra::new(total, w.clone(), t).expect("shape")
    }

    /// A random valid pair of a Rota-Baxter pre-Lie algebra and a
    /// Rota-Baxter bimodule over it.
    pub fn rb_pair(&mut self, max_dim: usize, max_mod: usize) -> (RBPreLieAlgebra, RBBimodule) {
        let w = self.weight();
        self.rb_pair_with_weight(max_dim, max_mod, w)
    }

    pub fn rb_pair_with_weight(
        &mut self,
        max_dim: usize,
        max_mod: usize,
        w: Rational,
    ) -> (RBPreLieAlgebra, RBBimodule) {
        assert!(max_dim >= 1 && max_mod >= 1);
        let (r, m) = match self.rng.gen_range(0..6) {
            0 if max_mod >= 1 => {
                let r = self.rb_algebra_with_weight(max_dim, w);
                let md = self.rng.gen_range(1..=max_mod);
                let t_m = self.int_matrix(md, md);
                let m = RBBimodule::new(Bimodule::zero(r.dim(), md), t_m).expect("shape");
                (r, m)
            }
            1 => {
                // pull back the regular module along the morphism T from the
                // star algebra
                let r = self.rb_algebra_with_weight(max_dim.min(max_mod), w);
                let star = star_algebra(&r, Validation::Trusted).expect("shape");
                let m = pullback_regular(&r, &r.operator);
                (star, m)
            }
            2 if max_dim >= 2 => {
                // pull back the regular module of a factor along the projection
                let d1 = self.rng.gen_range(1..max_dim).min(max_mod);
                let d2 = self.rng.gen_range(1..=max_dim - d1);
                let r1 = self.rb_algebra_with_weight(d1, w.clone());
                let r2 = self.rb_algebra_with_weight(d2, w);
                let (d1, d2) = (r1.dim(), r2.dim());
                let r = direct_product(&r1, &r2);
                let proj =
                    RationalMatrix::from_fn(
                        d1,
                        d1 + d2,
                        |a, b| if a == b { Rational::one() } else { Rational::zero() },
                    );
                (r, pullback_regular(&r1, &proj))
            }
            3 => {
                // the derived module over the star algebra
                let (r, m) = self.rb_pair_with_weight(max_dim, max_mod, w);
                let star = star_algebra(&r, Validation::Trusted).expect("shape");
                let dm = crate::prelie::derived_bimodule(&r, &m, Validation::Trusted).expect("shape");
                (star, dm)
            }
            4 if max_mod >= 2 => {
                let (r, m1) = self.rb_pair_with_weight(max_dim, max_mod - 1, w);
                let md2 = self.rng.gen_range(1..=max_mod - m1.mod_dim());
                let t2 = self.int_matrix(md2, md2);
                let m2 = RBBimodule::new(Bimodule::zero(r.dim(), md2), t2).expect("shape");
                (r, direct_sum(&m1, &m2))
            }
            _ => {
                let r = self.rb_algebra_with_weight(max_dim.min(max_mod), w);
                let m = RBBimodule::regular(&r);
                (r, m)
            }
        };
        let q = self.invertible_matrix(m.mod_dim());
        let m = change_module_basis(&m, &RationalMatrix::identity(r.dim()), &q).expect("invertible");
        assert_valid_pair(&r, &m);
        (r, m)
    }

    /// A random valid crossed module: `g0 = r1 x r2` (or `r2`), and
    /// `g1 = Z + r2` where `Z` has zero actions and a random operator, `d`
    /// includes `r2`, and `g1` is written in a random basis.
    pub fn crossed_module(&mut self, max_dim: usize, max_extra: usize) -> CrossedModule {
        let w = self.weight();
        let r2 = self.rb_algebra_with_weight(max_dim, w.clone());
        let (g0, d1) = if self.rng.gen_bool(0.5) {
            let r1 = self.rb_algebra_with_weight(max_dim, w);
            let d1 = r1.dim();
            (direct_product(&r1, &r2), d1)
        } else {
            (r2.clone(), 0)
        };
        let (n0, d2) = (g0.dim(), r2.dim());
        let k = self.rng.gen_range(0..=max_extra);
        let n1 = k + d2;
        let d = RationalMatrix::from_fn(n0, n1, |r, c| {
            if c >= k && r == d1 + c - k {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let extend = |m: RationalMatrix| block_diag(&RationalMatrix::zeros(k, k), &m);
        let s: Vec<RationalMatrix> = (0..n0)
            .map(|i| match i.checked_sub(d1) {
                Some(j) => extend(r2.algebra.left_mult(j)),
                None => RationalMatrix::zeros(n1, n1),
            })
            .collect();
        let p: Vec<RationalMatrix> = (0..n0)
            .map(|i| match i.checked_sub(d1) {
                Some(j) => extend(r2.algebra.right_mult(j)),
                None => RationalMatrix::zeros(n1, n1),
            })
            .collect();
        let product = BilinearMap::from_basis_fn(n1, n1, n1, |a, b| {
            let mut out = zero_vector(n1);
            if a >= k && b >= k {
                out[k..].clone_from_slice(r2.algebra.basis_product(a - k, b - k));
            }
            out
        });
        let t_z = self.int_matrix(k, k);
        let t1 = block_diag(&t_z, &r2.operator);

        let q = self.invertible_matrix(n1);
        let qinv = q.inverse().expect("invertible");
        let conj = |m: &RationalMatrix| qinv.mul(m).mul(&q);
        CrossedModule {
            g0,
            g1_product: product.precompose(&q, &q).then(&qinv),
            d: d.mul(&q),
            s: s.iter().map(conj).collect(),
            p: p.iter().map(conj).collect(),
            t1: conj(&t1),
        }
    }
}

/// `r1 x r2` with componentwise product and block-diagonal operator.
pub fn direct_product(r1: &RBPreLieAlgebra, r2: &RBPreLieAlgebra) -> RBPreLieAlgebra {
    assert_eq!(r1.weight, r2.weight, "direct product needs equal weights");
    let (d1, d2) = (r1.dim(), r2.dim());
    let n = d1 + d2;
    let a = PreLieAlgebra::from_basis_fn(n, |i, j| {
        let mut out = zero_vector(n);
        if i < d1 && j < d1 {
            out[..d1].clone_from_slice(r1.algebra.basis_product(i, j));
        } else if i >= d1 && j >= d1 {
            out[d1..].clone_from_slice(r2.algebra.basis_product(i - d1, j - d1));
        }
        out
    });
    let t = block_diag(&r1.operator, &r2.operator);
    RBPreLieAlgebra::new(a, r1.weight.clone(), t).expect("shape")
}

pub fn block_diag(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    RationalMatrix::from_fn(ra + b.rows(), ca + b.cols(), |r, c| {
        if r < ra && c < ca {
            a.get(r, c).clone()
        } else if r >= ra && c >= ca {
            b.get(r - ra, c - ca).clone()
        } else {
            Rational::zero()
        }
    })
}

/// `B x V` with `(b, v)(b', v') = (b b', b v' + v b')`.
pub fn semidirect_product(b: &PreLieAlgebra, m: &Bimodule) -> PreLieAlgebra {
    let (db, dv) = (b.dim(), m.mod_dim());
    let n = db + dv;
    PreLieAlgebra::from_basis_fn(n, |i, j| {
        let mut out = zero_vector(n);
        match (i < db, j < db) {
            (true, true) => out[..db].clone_from_slice(b.basis_product(i, j)),
            (true, false) => out[db..].clone_from_slice(&m.left()[i].column(j - db)),
            (false, true) => out[db..].clone_from_slice(&m.right()[j].column(i - db)),
            (false, false) => {}
        }
        out
    })
}

/// The regular module of `target` viewed over a source algebra through the
/// morphism `phi` (columns are images of source basis vectors).
pub fn pullback_regular(target: &RBPreLieAlgebra, phi: &RationalMatrix) -> RBBimodule {
    let reg = Bimodule::regular(&target.algebra);
    let left = (0..phi.cols()).map(|i| reg.left_matrix(&phi.column(i))).collect();
    let right = (0..phi.cols()).map(|i| reg.right_matrix(&phi.column(i))).collect();
    RBBimodule::new(
        Bimodule::new(target.dim(), left, right).expect("shape"),
        target.operator.clone(),
    )
    .expect("shape")
}

/// Block direct sum of two modules over the same algebra.
pub fn direct_sum(m1: &RBBimodule, m2: &RBBimodule) -> RBBimodule {
    let d = m1.base_dim();
    assert_eq!(d, m2.base_dim());
    let (b1, b2) = (&m1.bimodule, &m2.bimodule);
    let left = (0..d).map(|i| block_diag(&b1.left()[i], &b2.left()[i])).collect();
    let right = (0..d).map(|i| block_diag(&b1.right()[i], &b2.right()[i])).collect();
    let md = m1.mod_dim() + m2.mod_dim();
    RBBimodule::new(
        Bimodule::new(md, left, right).expect("shape"),
        block_diag(&m1.operator, &m2.operator),
    )
    .expect("shape")
}

fn assert_valid_algebra(r: &RBPreLieAlgebra) {
    assert!(
        check_pre_lie(&r.algebra).is_ok(),
        "generated algebra is not pre-Lie: {r:?}"
    );
    assert!(
        check_rb_operator(r).is_ok(),
        "generated operator fails the Rota-Baxter law: {r:?}"
    );
}

fn assert_valid_pair(r: &RBPreLieAlgebra, m: &RBBimodule) {
    assert_valid_algebra(r);
    assert!(
        check_bimodule(&r.algebra, &m.bimodule).expect("dims").is_ok(),
        "generated bimodule invalid"
    );
    assert!(
        check_rb_bimodule(r, m).expect("dims").is_ok(),
        "generated module operator invalid"
    );
}
