//! Exact scalars, univariate polynomials and factorization.

mod factor;
mod field;
mod mobius;
mod poly;

pub use factor::{factor_with_hints, poly_factor, poly_is_irreducible, Factorization};
pub use field::{element_arithmetic, is_prime_u64, ElementOp, FieldElement, FieldSpec, Scalar};
pub use mobius::MobiusMatrix;
pub use poly::{poly_xgcd, Poly};
