//! Fixed workloads shared by the benchmarks.

use rbprelie::prelie::Validation;
use rbprelie::random::Generator;
use rbprelie::{Cochain, Complexes, RBBimodule, RBPreLieAlgebra};

/// The first generated pair from `seed` on with exactly the given sizes.
pub fn pair(seed: u64, dim: usize, mod_dim: usize) -> (RBPreLieAlgebra, RBBimodule) {
    (seed..)
        .map(|s| Generator::new(s).rb_pair(dim, mod_dim))
        .find(|(r, m)| r.dim() == dim && m.mod_dim() == mod_dim)
        .expect("some seed reaches the maximal sizes")
}

/// Complexes of a fixed pair with a random cochain in degree `n`.
pub fn complex_with_cochain(seed: u64, n: usize) -> (Complexes, Cochain) {
    let (r, m) = pair(seed, 3, 3);
    let f = Generator::new(seed + 1).cochain(n, r.dim(), m.mod_dim());
    (
        Complexes::new(&r, &m, Validation::Check).expect("generated pairs are valid"),
        f,
    )
}
