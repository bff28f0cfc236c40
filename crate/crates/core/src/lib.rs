//! Exact computations with Rota-Baxter pre-Lie algebras of arbitrary weight:
//! axiom checkers, the three cochain complexes and their cohomology,
//! truncated formal deformations, abelian extensions and two-term algebras.

pub mod bilinear;
pub mod complexes;
pub mod deformations;
pub mod error;
pub mod exactla;
pub mod extensions;
pub mod fixtures;
pub mod prelie;
pub mod random;
pub mod twoalg;
pub mod verdict;

pub use bilinear::BilinearMap;
pub use complexes::{Cochain, ComplexKind, Complexes, RBACochain};
pub use error::{Error, Result};
pub use exactla::{Rational, RationalMatrix, Vector};
pub use prelie::{Bimodule, PreLieAlgebra, RBBimodule, RBPreLieAlgebra, Validation};
pub use twoalg::{CrossedModule, TwoAlgebra};
pub use verdict::{Verdict, Violation};
