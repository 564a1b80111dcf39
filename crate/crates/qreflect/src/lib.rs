//! qreflect: an exact symbolic verification engine for the trigonometric
//! 4x4 R-matrix, centrally extended Yang–Baxter and reflection-equation
//! algebras, dressed and coacted boundary operators, quadratic vertex-operator
//! realizations, and the associated current algebra.
//!
//! Everything is verified, never assumed: rational-function identities are
//! checked in a canonical fraction field over the Gaussian rationals, operator
//! identities by normal-order rewriting with exchange rules derived from the
//! defining relations by exact linear algebra, and the non-rational scalar
//! factors `r(.)`, `f(.)` by a formal prefactor calculus that only ever uses
//! their functional relations.
//!
//! The primary interface is the library plus the runnable programs under
//! `examples/` (one per capability); a thin `qreflect` binary exposes the same
//! checks as CLI subcommands with JSON reports.

pub mod algebras;
pub mod ctx;
pub mod error;
pub mod field;
pub mod ncalg;
pub mod prefactor;
pub mod report;
pub mod rmatrix;
pub mod tensor;
pub mod uqsl2;

pub use error::{Error, Result};
