//! Exact algebra: univariate and multivariate polynomials over the
//! rationals, real-root isolation, real algebraic numbers, and elimination
//! for zero-dimensional polynomial systems.

pub mod algebraic;
pub mod elimination;
pub mod groebner;
pub mod mpoly;
pub mod real;
pub mod resultant;
pub mod roots;
pub mod sturm;
pub mod upoly;

pub use algebraic::{AlgebraicNumber, NumberField};
pub use elimination::{back_substitute, eliminate, eliminate_full, Elimination, EliminationMethod, PolySystem};
pub use mpoly::{Coeff, MPoly};
pub use real::Real;
pub use sturm::{isolate_real_roots, refine_root, sturm_count, RootInterval, SturmSequence};
pub use upoly::RationalPoly;
