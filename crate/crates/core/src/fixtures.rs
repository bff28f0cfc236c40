//! Small named structures used in examples, tests and benchmarks.

use crate::exactla::{int, zero_vector, Rational, RationalMatrix};
use crate::prelie::{PreLieAlgebra, RBBimodule, RBPreLieAlgebra};

/// One-dimensional algebra with zero product, zero operator, weight 0.
pub fn a0() -> RBPreLieAlgebra {
    RBPreLieAlgebra::new(PreLieAlgebra::abelian(1), int(0), RationalMatrix::zeros(1, 1))
        .expect("fixture dimensions agree")
}

/// Two-dimensional algebra with `e1 e1 = e2` and all other products zero.
pub fn a1() -> PreLieAlgebra {
    PreLieAlgebra::from_basis_fn(2, |i, j| {
        let mut v = zero_vector(2);
        if (i, j) == (0, 0) {
            v[1] = int(1);
        }
        v
    })
}

/// `a1` with the operator `e1 -> e2`, `e2 -> 0`, valid for every weight.
pub fn a1n(weight: Rational) -> RBPreLieAlgebra {
    let mut t = RationalMatrix::zeros(2, 2);
    t.set(1, 0, int(1));
    RBPreLieAlgebra::new(a1(), weight, t).expect("fixture dimensions agree")
}

/// A structure paired with its regular module.
pub fn with_regular(r: RBPreLieAlgebra) -> (RBPreLieAlgebra, RBBimodule) {
    let m = RBBimodule::regular(&r);
    (r, m)
}
