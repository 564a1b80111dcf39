//! Exact arithmetic: Gaussian rationals, Laurent monomials and polynomials,
//! the fraction field with canonical forms, multivariate GCD, and the scalar
//! expression parser.

pub mod gaussian;
pub mod gcd;
pub mod laurent;
pub mod monomial;
pub mod parse;
pub mod scalar;

pub use gaussian::GaussianRational;
pub use gcd::{poly_gcd, poly_gcd_many};
pub use laurent::{max_degree, set_max_degree, LaurentPoly};
pub use monomial::{Monomial, Var};
pub use parse::parse_scalar;
pub use scalar::{Assignment, Scalar};
