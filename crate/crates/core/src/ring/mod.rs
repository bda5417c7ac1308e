//! Exact coefficient arithmetic and sparse multivariate polynomials.

mod monomial;
mod parse;
mod polynomial;
mod scalar;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub(crate) use polynomial::same_ring;
pub use polynomial::{poly_arith, ArithOp, PolyRing, Polynomial, RingRef};
pub use scalar::{Field, Fp, Scalar};
