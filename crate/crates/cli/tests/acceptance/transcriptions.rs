//! Second transcription of the two long coherence identities of a
//! two-term algebra, written term by term with explicit names.

use num_traits::One;
use rbprelie::exactla::{axpy, sub_vectors, zero_vector};
use rbprelie::{Rational, TwoAlgebra, Vector};

pub fn f_identity(t: &TwoAlgebra, w: &[Rational], x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    let m00 = |a: &[Rational], b: &[Rational]| t.l2_00.apply(a, b);
    let left = |a: &[Rational], u: &[Rational]| t.l2_01.apply(a, u);
    let right = |u: &[Rational], a: &[Rational]| t.l2_10.apply(u, a);
    let h = |a: &[Rational], b: &[Rational], c: &[Rational]| t.l3.eval(&[a.to_vec(), b.to_vec(), c.to_vec()]).unwrap();
    let comm = |a: &[Rational], b: &[Rational]| sub_vectors(&m00(a, b), &m00(b, a));
    let plus = [
        left(w, &h(x, y, z)),
        left(y, &h(w, x, z)),
        right(&h(x, y, w), z),
        right(&h(w, x, y), z),
        h(w, y, &m00(x, z)),
        h(&comm(w, y), x, z),
    ];
    let minus = [
        left(x, &h(w, y, z)),
        right(&h(w, y, x), z),
        h(x, y, &m00(w, z)),
        h(w, x, &m00(y, z)),
        h(&comm(w, x), y, z),
        h(&comm(x, y), w, z),
    ];
    let mut out = zero_vector(t.dim1());
    for v in &plus {
        axpy(&mut out, &Rational::one(), v);
    }
    for v in &minus {
        axpy(&mut out, &-Rational::one(), v);
    }
    out
}

pub struct VTerms<'a> {
    pub t: &'a TwoAlgebra,
    pub lambda: &'a Rational,
}

impl VTerms<'_> {
    fn tx(&self, x: &[Rational]) -> Vector {
        self.t.t0.mul_vec(x)
    }

    fn theta(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.t.t2.apply(a, b)
    }

    fn h(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Vector {
        self.t.l3.eval(&[a.to_vec(), b.to_vec(), c.to_vec()]).unwrap()
    }

    fn circ(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let p = |u: &[Rational], v: &[Rational]| self.t.l2_00.apply(u, v);
        let mut out = p(&self.tx(a), b);
        axpy(&mut out, &Rational::one(), &p(a, &self.tx(b)));
        axpy(&mut out, self.lambda, &p(a, b));
        out
    }

    /// Terms shared by both forms: `T2` on star products and `l3` on `T0`.
    fn common(&self, x1: &[Rational], x2: &[Rational], x3: &[Rational]) -> Vector {
        let mut out = zero_vector(self.t.dim1());
        axpy(&mut out, &-Rational::one(), &self.theta(x2, &self.circ(x1, x3)));
        axpy(&mut out, &Rational::one(), &self.theta(x1, &self.circ(x2, x3)));
        axpy(&mut out, &-Rational::one(), &self.theta(&self.circ(x1, x2), x3));
        axpy(&mut out, &Rational::one(), &self.theta(&self.circ(x2, x1), x3));
        axpy(
            &mut out,
            &Rational::one(),
            &self.h(&self.tx(x1), &self.tx(x2), &self.tx(x3)),
        );
        out
    }

    /// Terms with `T0` acting on a `T2` value through `l2`.
    fn plain_actions(&self, x1: &[Rational], x2: &[Rational], x3: &[Rational]) -> Vector {
        let l = |a: &[Rational], u: &[Rational]| self.t.l2_01.apply(a, u);
        let r = |u: &[Rational], a: &[Rational]| self.t.l2_10.apply(u, a);
        let mut out = l(&self.tx(x1), &self.theta(x2, x3));
        axpy(&mut out, &-Rational::one(), &l(&self.tx(x2), &self.theta(x1, x3)));
        axpy(&mut out, &Rational::one(), &r(&self.theta(x2, x1), &self.tx(x3)));
        axpy(&mut out, &-Rational::one(), &r(&self.theta(x1, x2), &self.tx(x3)));
        out
    }

    pub fn literal(&self, x1: &[Rational], x2: &[Rational], x3: &[Rational]) -> Vector {
        let mut out = self.plain_actions(x1, x2, x3);
        axpy(&mut out, &Rational::one(), &self.common(x1, x2, x3));
        axpy(&mut out, &-Rational::one(), &self.t.t1.mul_vec(&self.h(x1, x2, x3)));
        out
    }

    /// The printed form plus the `T1` corrections: `-T1` of the plain
    /// actions on `T2` values, and `-T1 l3` over every operator pattern
    /// other than all three slots, weighted by powers of lambda.
    pub fn corrected(&self, x1: &[Rational], x2: &[Rational], x3: &[Rational]) -> Vector {
        let l = |a: &[Rational], u: &[Rational]| self.t.l2_01.apply(a, u);
        let r = |u: &[Rational], a: &[Rational]| self.t.l2_10.apply(u, a);
        let mut out = self.plain_actions(x1, x2, x3);
        axpy(&mut out, &Rational::one(), &self.common(x1, x2, x3));
        let mut inside = l(x1, &self.theta(x2, x3));
        axpy(&mut inside, &-Rational::one(), &l(x2, &self.theta(x1, x3)));
        axpy(&mut inside, &Rational::one(), &r(&self.theta(x2, x1), x3));
        axpy(&mut inside, &-Rational::one(), &r(&self.theta(x1, x2), x3));
        let (t1, t2, t3) = (self.tx(x1), self.tx(x2), self.tx(x3));
        let lam = self.lambda;
        let lam2 = lam * lam;
        axpy(&mut inside, &lam2, &self.h(x1, x2, x3));
        for v in [self.h(&t1, x2, x3), self.h(x1, &t2, x3), self.h(x1, x2, &t3)] {
            axpy(&mut inside, lam, &v);
        }
        for v in [self.h(&t1, &t2, x3), self.h(&t1, x2, &t3), self.h(x1, &t2, &t3)] {
            axpy(&mut inside, &Rational::one(), &v);
        }
        axpy(&mut out, &-Rational::one(), &self.t.t1.mul_vec(&inside));
        out
    }
}
