//! Independent reference computations. Structures are copied into plain
//! tables and every law, differential and rank is recomputed from the
//! definitions with dense loops over full argument tuples.

use num_traits::{One, Zero};
use rbprelie::{Cochain, RBBimodule, RBPreLieAlgebra, Rational};

pub type V = Vec<Rational>;

pub fn zeros(n: usize) -> V {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> V {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_into(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn plus(a: &[Rational], b: &[Rational]) -> V {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn minus(a: &[Rational], b: &[Rational]) -> V {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn times(c: &Rational, a: &[Rational]) -> V {
    a.iter().map(|x| c * x).collect()
}

/// `sum_i x_i cols[i]`.
pub fn combine(cols: &[V], x: &[Rational], out_dim: usize) -> V {
    let mut out = zeros(out_dim);
    for (c, col) in x.iter().zip(cols) {
        add_into(&mut out, c, col);
    }
    out
}

/// `sum_ij x_i y_j table[i][j]`.
pub fn bilinear(table: &[Vec<V>], x: &[Rational], y: &[Rational], out_dim: usize) -> V {
    let mut out = zeros(out_dim);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            add_into(&mut out, &(xi * yj), &table[i][j]);
        }
    }
    out
}

/// An algebra with a bimodule, as raw tables. `left[i][a] = e_i f_a`,
/// `right[i][a] = f_a e_i`; operators are stored by columns.
#[derive(Debug, Clone)]
pub struct Raw {
    pub d: usize,
    pub m: usize,
    pub w: Rational,
    pub mu: Vec<Vec<V>>,
    pub t: Vec<V>,
    pub left: Vec<Vec<V>>,
    pub right: Vec<Vec<V>>,
    pub tm: Vec<V>,
}

impl Raw {
    pub fn algebra(r: &RBPreLieAlgebra) -> (usize, Vec<Vec<V>>, Vec<V>) {
        let d = r.dim();
        let mu = (0..d)
            .map(|i| (0..d).map(|j| r.algebra.basis_product(i, j).to_vec()).collect())
            .collect();
        let t = (0..d)
            .map(|i| (0..d).map(|k| r.operator.get(k, i).clone()).collect())
            .collect();
        (d, mu, t)
    }

    pub fn of(r: &RBPreLieAlgebra, m: &RBBimodule) -> Self {
        let (d, mu, t) = Self::algebra(r);
        let md = m.mod_dim();
        let col = |mat: &rbprelie::RationalMatrix, a: usize| -> V { (0..md).map(|k| mat.get(k, a).clone()).collect() };
        Self {
            d,
            m: md,
            w: r.weight.clone(),
            mu,
            t,
            left: (0..d)
                .map(|i| (0..md).map(|a| col(&m.bimodule.left()[i], a)).collect())
                .collect(),
            right: (0..d)
                .map(|i| (0..md).map(|a| col(&m.bimodule.right()[i], a)).collect())
                .collect(),
            tm: (0..md).map(|a| col(&m.operator, a)).collect(),
        }
    }

    /// The algebra acting on itself, with the same operator.
    pub fn regular(r: &RBPreLieAlgebra) -> Self {
        let (d, mu, t) = Self::algebra(r);
        let right = (0..d).map(|i| (0..d).map(|a| mu[a][i].clone()).collect()).collect();
        Self {
            d,
            m: d,
            w: r.weight.clone(),
            left: mu.clone(),
            right,
            tm: t.clone(),
            mu,
            t,
        }
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> V {
        bilinear(&self.mu, x, y, self.d)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> V {
        minus(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn op(&self, x: &[Rational]) -> V {
        combine(&self.t, x, self.d)
    }

    pub fn op_m(&self, u: &[Rational]) -> V {
        combine(&self.tm, u, self.m)
    }

    pub fn act_l(&self, x: &[Rational], u: &[Rational]) -> V {
        bilinear(&self.left, x, u, self.m)
    }

    pub fn act_r(&self, u: &[Rational], x: &[Rational]) -> V {
        let mut out = zeros(self.m);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (a, ua) in u.iter().enumerate() {
                if !ua.is_zero() {
                    add_into(&mut out, &(xi * ua), &self.right[i][a]);
                }
            }
        }
        out
    }

    pub fn e(&self, i: usize) -> V {
        unit(self.d, i)
    }

    pub fn f(&self, a: usize) -> V {
        unit(self.m, a)
    }

    /// `a * b = a T(b) + T(a) b + w a b` with the derived actions
    /// `a |> u = T(a) u - T_M(a u)`, `u <| a = u T(a) - T_M(u a)`.
    pub fn star(&self) -> Self {
        let (d, m) = (self.d, self.m);
        let mu = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let (x, y) = (self.e(i), self.e(j));
                        let mut v = plus(&self.mul(&x, &self.op(&y)), &self.mul(&self.op(&x), &y));
                        add_into(&mut v, &self.w, &self.mul(&x, &y));
                        v
                    })
                    .collect()
            })
            .collect();
        let left = (0..d)
            .map(|i| {
                (0..m)
                    .map(|a| {
                        let (x, u) = (self.e(i), self.f(a));
                        minus(&self.act_l(&self.op(&x), &u), &self.op_m(&self.act_l(&x, &u)))
                    })
                    .collect()
            })
            .collect();
        let right = (0..d)
            .map(|i| {
                (0..m)
                    .map(|a| {
                        let (x, u) = (self.e(i), self.f(a));
                        minus(&self.act_r(&u, &self.op(&x)), &self.op_m(&self.act_r(&u, &x)))
                    })
                    .collect()
            })
            .collect();
        Self {
            d,
            m,
            w: self.w.clone(),
            mu,
            t: self.t.clone(),
            left,
            right,
            tm: self.tm.clone(),
        }
    }

    /// Basis of `{u : (xy)u = x(yu)}`.
    pub fn nucleus(&self) -> Vec<V> {
        let mut rows = Vec::new();
        for i in 0..self.d {
            for j in 0..self.d {
                let xy = self.mul(&self.e(i), &self.e(j));
                // row k of the map u -> (xy)u - x(yu)
                let cols: Vec<V> = (0..self.m)
                    .map(|a| {
                        let u = self.f(a);
                        minus(
                            &self.act_l(&xy, &u),
                            &self.act_l(&self.e(i), &self.act_l(&self.e(j), &u)),
                        )
                    })
                    .collect();
                for k in 0..self.m {
                    rows.push(cols.iter().map(|c| c[k].clone()).collect());
                }
            }
        }
        kernel(&rows, self.m)
    }
}

/// Sorted `(law, basis, defect)` triples with nonzero defect.
pub type Report = Vec<(String, Vec<usize>, V)>;

fn record(out: &mut Report, law: &str, basis: Vec<usize>, defect: V) {
    if !is_zero(&defect) {
        out.push((law.to_string(), basis, defect));
    }
}

pub fn sorted(mut r: Report) -> Report {
    r.sort();
    r
}

pub fn from_verdict(v: &rbprelie::Verdict) -> Report {
    sorted(
        v.violations
            .iter()
            .map(|w| (w.law.to_string(), w.basis.clone(), w.defect.clone()))
            .collect(),
    )
}

/// `(xy)z - x(yz) - (yx)z + y(xz)` for `i < j`.
pub fn pre_lie_defects(r: &Raw) -> Report {
    let mut out = Vec::new();
    for i in 0..r.d {
        for j in i + 1..r.d {
            for k in 0..r.d {
                let (x, y, z) = (r.e(i), r.e(j), r.e(k));
                let mut v = r.mul(&r.mul(&x, &y), &z);
                add_into(&mut v, &-Rational::one(), &r.mul(&x, &r.mul(&y, &z)));
                add_into(&mut v, &-Rational::one(), &r.mul(&r.mul(&y, &x), &z));
                add_into(&mut v, &Rational::one(), &r.mul(&y, &r.mul(&x, &z)));
                record(&mut out, "pre-Lie", vec![i, j, k], v);
            }
        }
    }
    sorted(out)
}

/// `T(x)T(y) - T(x T(y) + T(x) y + w x y)`.
pub fn rb_defects(r: &Raw) -> Report {
    let mut out = Vec::new();
    for i in 0..r.d {
        for j in 0..r.d {
            let (x, y) = (r.e(i), r.e(j));
            let mut inner = r.mul(&x, &r.op(&y));
            add_into(&mut inner, &Rational::one(), &r.mul(&r.op(&x), &y));
            add_into(&mut inner, &r.w, &r.mul(&x, &y));
            let v = minus(&r.mul(&r.op(&x), &r.op(&y)), &r.op(&inner));
            record(&mut out, "Rota-Baxter", vec![i, j], v);
        }
    }
    sorted(out)
}

/// Left-module law for `i < j` and the mixed law for all `i, j`.
pub fn bimodule_defects(r: &Raw) -> Report {
    let mut out = Vec::new();
    for i in 0..r.d {
        for j in 0..r.d {
            let (x, y) = (r.e(i), r.e(j));
            let (xy, yx) = (r.mul(&x, &y), r.mul(&y, &x));
            for k in 0..r.m {
                let u = r.f(k);
                if i < j {
                    let mut v = r.act_l(&x, &r.act_l(&y, &u));
                    add_into(&mut v, &-Rational::one(), &r.act_l(&xy, &u));
                    add_into(&mut v, &-Rational::one(), &r.act_l(&y, &r.act_l(&x, &u)));
                    add_into(&mut v, &Rational::one(), &r.act_l(&yx, &u));
                    record(&mut out, "left-module", vec![i, j, k], v);
                }
                let mut v = r.act_l(&x, &r.act_r(&u, &y));
                add_into(&mut v, &-Rational::one(), &r.act_r(&r.act_l(&x, &u), &y));
                add_into(&mut v, &-Rational::one(), &r.act_r(&u, &xy));
                add_into(&mut v, &Rational::one(), &r.act_r(&r.act_r(&u, &x), &y));
                record(&mut out, "bimodule", vec![i, j, k], v);
            }
        }
    }
    sorted(out)
}

/// The two operator compatibilities on `(e_i, f_k)`.
pub fn rb_bimodule_defects(r: &Raw) -> Report {
    let mut out = Vec::new();
    for i in 0..r.d {
        let x = r.e(i);
        let tx = r.op(&x);
        for k in 0..r.m {
            let u = r.f(k);
            let tu = r.op_m(&u);
            let mut inner = r.act_l(&x, &tu);
            add_into(&mut inner, &Rational::one(), &r.act_l(&tx, &u));
            add_into(&mut inner, &r.w, &r.act_l(&x, &u));
            record(
                &mut out,
                "Rota-Baxter-left",
                vec![i, k],
                minus(&r.act_l(&tx, &tu), &r.op_m(&inner)),
            );
            let mut inner = r.act_r(&u, &tx);
            add_into(&mut inner, &Rational::one(), &r.act_r(&tu, &x));
            add_into(&mut inner, &r.w, &r.act_r(&u, &x));
            record(
                &mut out,
                "Rota-Baxter-right",
                vec![i, k],
                minus(&r.act_r(&tu, &tx), &r.op_m(&inner)),
            );
        }
    }
    sorted(out)
}

pub fn all_laws_hold(r: &Raw) -> bool {
    pre_lie_defects(r).is_empty()
        && rb_defects(r).is_empty()
        && bimodule_defects(r).is_empty()
        && rb_bimodule_defects(r).is_empty()
}

/// Antisymmetry and Jacobi of the commutator, on all basis triples.
pub fn commutator_is_lie(r: &Raw) -> bool {
    let e = |i| r.e(i);
    for i in 0..r.d {
        for j in 0..r.d {
            if !is_zero(&plus(&r.bracket(&e(i), &e(j)), &r.bracket(&e(j), &e(i)))) {
                return false;
            }
            for k in 0..r.d {
                let (x, y, z) = (e(i), e(j), e(k));
                let mut s = r.bracket(&x, &r.bracket(&y, &z));
                add_into(&mut s, &Rational::one(), &r.bracket(&y, &r.bracket(&z, &x)));
                add_into(&mut s, &Rational::one(), &r.bracket(&z, &r.bracket(&x, &y)));
                if !is_zero(&s) {
                    return false;
                }
            }
        }
    }
    true
}

/// A multilinear map on all ordered basis tuples, no symmetry assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dense {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub vals: Vec<V>,
}

impl Dense {
    pub fn from_fn(n: usize, d: usize, m: usize, mut f: impl FnMut(&[usize]) -> V) -> Self {
        let count = d.pow(n as u32);
        let vals = (0..count).map(|c| f(&digits(c, n, d))).collect();
        Self { n, d, m, vals }
    }

    /// Reads the stored canonical values of a cochain and extends them
    /// antisymmetrically in all but the last argument.
    pub fn of(c: &Cochain) -> Self {
        let (n, d, m) = (c.degree(), c.base_dim(), c.mod_dim());
        if n == 0 {
            return Self {
                n,
                d,
                m,
                vals: vec![c.values().to_vec()],
            };
        }
        Self::from_fn(n, d, m, |xs| match sort_signed(&xs[..n - 1]) {
            None => zeros(m),
            Some((skew, negative)) => {
                let v = c.get(&skew, xs[n - 1]).to_vec();
                if negative {
                    times(&-Rational::one(), &v)
                } else {
                    v
                }
            }
        })
    }

    pub fn at(&self, xs: &[usize]) -> &V {
        let mut c = 0;
        for &x in xs {
            c = c * self.d + x;
        }
        &self.vals[c]
    }

    /// Multilinear evaluation on coordinate vectors.
    pub fn eval(&self, args: &[V]) -> V {
        assert_eq!(args.len(), self.n);
        let mut out = zeros(self.m);
        let mut idx = vec![0usize; self.n];
        self.expand(args, 0, &Rational::one(), &mut idx, &mut out);
        out
    }

    fn expand(&self, args: &[V], pos: usize, coef: &Rational, idx: &mut Vec<usize>, out: &mut V) {
        if pos == self.n {
            add_into(out, coef, self.at(idx));
            return;
        }
        for (i, c) in args[pos].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx[pos] = i;
            self.expand(args, pos + 1, &(coef * c), idx, out);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            vals: self.vals.iter().zip(&other.vals).map(|(a, b)| minus(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            vals: self.vals.iter().zip(&other.vals).map(|(a, b)| plus(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            vals: self.vals.iter().map(|a| times(&-Rational::one(), a)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|v| is_zero(v))
    }

    pub fn zero(n: usize, d: usize, m: usize) -> Self {
        Self::from_fn(n, d, m, |_| zeros(m))
    }
}

fn digits(mut c: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for p in (0..n).rev() {
        out[p] = c % d;
        c /= d;
    }
    out
}

/// Sorted copy and whether an odd permutation sorts it; `None` on repeats.
pub fn sort_signed(xs: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = xs.to_vec();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn drop(xs: &[V], skip: &[usize]) -> Vec<V> {
    xs.iter()
        .enumerate()
        .filter(|(p, _)| !skip.contains(p))
        .map(|(_, x)| x.clone())
        .collect()
}

/// The pre-Lie coboundary with coefficients in the bimodule of `r`,
/// with 1-based signs as written: `(-1)^(i+1)` and `(-1)^(i+j)`.
pub fn delta(r: &Raw, f: &Dense) -> Dense {
    let (d, m, n) = (r.d, r.m, f.n);
    if n == 0 {
        let u = &f.vals[0];
        return Dense::from_fn(1, d, m, |xs| {
            let x = r.e(xs[0]);
            minus(&r.act_l(&x, u), &r.act_r(u, &x))
        });
    }
    Dense::from_fn(n + 1, d, m, |idx| {
        let xs: Vec<V> = idx.iter().map(|&i| r.e(i)).collect();
        let last = &xs[n];
        let mut out = zeros(m);
        for i in 1..=n {
            let s = sign(i + 1);
            let rest = drop(&xs[..n], &[i - 1]);
            let mut args = rest.clone();
            args.push(last.clone());
            add_into(&mut out, &s, &r.act_l(&xs[i - 1], &f.eval(&args)));
            let mut args = rest.clone();
            args.push(xs[i - 1].clone());
            add_into(&mut out, &s, &r.act_r(&f.eval(&args), last));
            let mut args = rest;
            args.push(r.mul(&xs[i - 1], last));
            add_into(&mut out, &-s, &f.eval(&args));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let mut args = vec![r.bracket(&xs[i - 1], &xs[j - 1])];
                args.extend(drop(&xs, &[i - 1, j - 1]));
                add_into(&mut out, &sign(i + j), &f.eval(&args));
            }
        }
        out
    })
}

/// `f o T^n - T_M sum over proper subsets P of w^(n-1-|P|) f(T on P)`;
/// the identity in degree 0.
pub fn chain_map(r: &Raw, f: &Dense) -> Dense {
    let n = f.n;
    if n == 0 {
        return f.clone();
    }
    Dense::from_fn(n, r.d, r.m, |idx| {
        let plain: Vec<V> = idx.iter().map(|&i| r.e(i)).collect();
        let moved: Vec<V> = plain.iter().map(|x| r.op(x)).collect();
        let mut out = f.eval(&moved);
        let mut inner = zeros(r.m);
        for subset in 0u32..(1 << n) - 1 {
            let k = subset.count_ones() as usize;
            let mut c = Rational::one();
            for _ in 0..n - 1 - k {
                c *= &r.w;
            }
            let args: Vec<V> = (0..n)
                .map(|p| {
                    if subset & (1 << p) != 0 {
                        moved[p].clone()
                    } else {
                        plain[p].clone()
                    }
                })
                .collect();
            add_into(&mut inner, &c, &f.eval(&args));
        }
        add_into(&mut out, &-Rational::one(), &r.op_m(&inner));
        out
    })
}

/// `d(f, g) = (delta f, -partial g - Phi f)` where `partial` is `delta` of
/// the star algebra with the derived actions, and `d(u) = (delta u, -u)`.
pub fn cone(r: &Raw, star: &Raw, f: &Dense, g: Option<&Dense>) -> (Dense, Dense) {
    let second = match g {
        None => f.neg(),
        Some(g) => delta(star, g).add(&chain_map(r, f)).neg(),
    };
    (delta(r, f), second)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<V>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        rows[r] = times(&inv, &rows[r]);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                add_into(&mut rows[i], &-f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank_of_columns(columns: &[V]) -> usize {
    let mut rows: Vec<V> = columns.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    rref(&mut rows, width).len()
}

/// Kernel basis of the matrix with the given rows.
pub fn kernel(rows: &[V], cols: usize) -> Vec<V> {
    let mut rows = rows.to_vec();
    let pivots = rref(&mut rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = zeros(cols);
            v[free] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Canonical keys: increasing skew tuple followed by the last index.
pub fn keys(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n - 1 {
        let mut next = Vec::new();
        for c in &combos {
            let start = c.last().map_or(0, |&l| l + 1);
            for v in start..d {
                let mut c2 = c.clone();
                c2.push(v);
                next.push(c2);
            }
        }
        combos = next;
    }
    for c in combos {
        for last in 0..d {
            let mut k = c.clone();
            k.push(last);
            out.push(k);
        }
    }
    out
}

/// Coordinates of a dense cochain of degree `n >= 1` at the canonical keys;
/// in degree 0 the vector itself.
pub fn coords(f: &Dense) -> V {
    if f.n == 0 {
        return f.vals[0].clone();
    }
    keys(f.n, f.d).iter().flat_map(|k| f.at(k).clone()).collect()
}

/// The cochain with the given canonical coordinates, extended
/// antisymmetrically.
pub fn from_coords(n: usize, d: usize, m: usize, v: &[Rational]) -> Dense {
    if n == 0 {
        return Dense {
            n,
            d,
            m,
            vals: vec![v.to_vec()],
        };
    }
    let ks = keys(n, d);
    Dense::from_fn(n, d, m, |xs| match sort_signed(&xs[..n - 1]) {
        None => zeros(m),
        Some((mut skew, negative)) => {
            skew.push(xs[n - 1]);
            let pos = ks.iter().position(|k| *k == skew).expect("canonical key");
            let val = v[pos * m..(pos + 1) * m].to_vec();
            if negative {
                times(&-Rational::one(), &val)
            } else {
                val
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Pla,
    Rbo,
    Rba,
}

/// Spaces and differentials of the three complexes, assembled from the
/// dense definitions. Degree-0 pieces are the nucleus of the module.
pub struct Spaces {
    pub raw: Raw,
    star: Raw,
    nucleus: Vec<V>,
}

impl Spaces {
    pub fn new(raw: Raw) -> Self {
        let star = raw.star();
        let nucleus = raw.nucleus();
        Self { raw, star, nucleus }
    }

    fn piece_dim(&self, n: usize) -> usize {
        if n == 0 {
            self.nucleus.len()
        } else {
            keys(n, self.raw.d).len() * self.raw.m
        }
    }

    pub fn dim(&self, kind: Kind, n: usize) -> usize {
        match kind {
            Kind::Pla | Kind::Rbo => self.piece_dim(n),
            Kind::Rba => self.piece_dim(n) + if n > 0 { self.piece_dim(n - 1) } else { 0 },
        }
    }

    fn piece_basis(&self, n: usize) -> Vec<Dense> {
        let (d, m) = (self.raw.d, self.raw.m);
        if n == 0 {
            return self.nucleus.iter().map(|u| from_coords(0, d, m, u)).collect();
        }
        let size = self.piece_dim(n);
        (0..size).map(|c| from_coords(n, d, m, &unit(size, c))).collect()
    }

    /// Columns of the degree-`n` differential. Targets are in canonical
    /// coordinates, so degree-0 targets use ambient module coordinates.
    pub fn columns(&self, kind: Kind, n: usize) -> Vec<V> {
        match kind {
            Kind::Pla => self
                .piece_basis(n)
                .iter()
                .map(|f| coords(&delta(&self.raw, f)))
                .collect(),
            Kind::Rbo => self
                .piece_basis(n)
                .iter()
                .map(|g| coords(&delta(&self.star, g)))
                .collect(),
            Kind::Rba => {
                let mut cols = Vec::new();
                let zero_g = (n > 0).then(|| Dense::zero(n - 1, self.raw.d, self.raw.m));
                for f in self.piece_basis(n) {
                    let (a, b) = cone(&self.raw, &self.star, &f, zero_g.as_ref());
                    cols.push([coords(&a), coords(&b)].concat());
                }
                if n > 0 {
                    let zero_f = Dense::zero(n, self.raw.d, self.raw.m);
                    for g in self.piece_basis(n - 1) {
                        let (a, b) = cone(&self.raw, &self.star, &zero_f, Some(&g));
                        cols.push([coords(&a), coords(&b)].concat());
                    }
                }
                cols
            }
        }
    }

    pub fn rank(&self, kind: Kind, n: usize) -> usize {
        rank_of_columns(&self.columns(kind, n))
    }

    pub fn betti(&self, kind: Kind, max: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max).map(|n| self.rank(kind, n)).collect();
        (0..=max)
            .map(|n| self.dim(kind, n) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect()
    }

    /// Basis of degree-`n` cone cocycles, `n >= 1`, as `(f, g)` pairs.
    pub fn cone_cocycles(&self, n: usize) -> Vec<(Dense, Dense)> {
        let cols = self.columns(Kind::Rba, n);
        let width = cols.len();
        let height = cols.first().map_or(0, |c| c.len());
        let rows: Vec<V> = (0..height)
            .map(|k| cols.iter().map(|c| c[k].clone()).collect())
            .collect();
        let (d, m) = (self.raw.d, self.raw.m);
        let split = self.piece_dim(n);
        let lower = self.piece_basis(n - 1);
        kernel(&rows, width)
            .into_iter()
            .map(|v| {
                let f = from_coords(n, d, m, &v[..split]);
                let mut g = Dense::zero(n - 1, d, m);
                for (c, b) in v[split..].iter().zip(&lower) {
                    for (gv, bv) in g.vals.iter_mut().zip(&b.vals) {
                        add_into(gv, c, bv);
                    }
                }
                (f, g)
            })
            .collect()
    }

    /// Whether the degree-`n` cone cochain is a coboundary.
    pub fn cone_exact(&self, n: usize, f: &Dense, g: &Dense) -> bool {
        let cols = self.columns(Kind::Rba, n - 1);
        let target = [coords(f), coords(g)].concat();
        let mut with = cols.clone();
        with.push(target);
        rank_of_columns(&cols) == rank_of_columns(&with)
    }
}
