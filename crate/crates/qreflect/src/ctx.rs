//! Evaluation context: symbolic mode keeps every scalar coefficient as an
//! exact multivariate rational function; sampled mode eagerly evaluates each
//! scalar coefficient at a fixed rational point the moment it is produced.
//!
//! Only *scalar coefficients* are ever evaluated.  Generator arguments,
//! prefactor arguments, and words stay fully symbolic in both modes, so a
//! sampled run exercises exactly the same rewriting logic as a symbolic run —
//! it merely replaces expensive rational-function arithmetic in the
//! coefficients by rational-number arithmetic.
//!
//! A sampled evaluation that hits a pole of a coefficient (the sample point
//! lies on a singular locus that the sampler could not know about in advance)
//! raises a typed panic carrying [`Error::PoleAtPoint`]; the per-trial driver
//! catches it and retries with the next trial index.

use crate::error::Error;
use crate::field::{Assignment, Scalar};

/// How scalar coefficients are to be treated during a verification run.
#[derive(Clone, Debug, Default)]
pub enum Mode {
    /// Keep coefficients as exact rational functions.
    #[default]
    Symbolic,
    /// Evaluate every coefficient at the given rational point on creation.
    Sampled(Assignment),
}

/// Shared context threaded through all coefficient arithmetic.
#[derive(Clone, Debug, Default)]
pub struct Ctx {
    pub mode: Mode,
}

impl Ctx {
    /// Exact symbolic arithmetic (the default).
    pub fn symbolic() -> Ctx {
        Ctx { mode: Mode::Symbolic }
    }

    /// Eager evaluation at `point`; the point must bind every variable that
    /// can appear in a coefficient during the run.
    pub fn sampled(point: Assignment) -> Ctx {
        Ctx { mode: Mode::Sampled(point) }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self.mode, Mode::Sampled(_))
    }

    /// Post-process a freshly computed scalar coefficient.
    ///
    /// Symbolic mode returns it unchanged; sampled mode collapses it to the
    /// constant it takes at the sample point.  A pole at the sample point
    /// unwinds with a typed panic (`Error::PoleAtPoint`) so the trial driver
    /// can resample instead of reporting a spurious failure.
    pub fn post(&self, s: Scalar) -> Scalar {
        match &self.mode {
            Mode::Symbolic => s,
            Mode::Sampled(point) => match s.eval(point) {
                Ok(value) => Scalar::constant(value),
                Err(e @ Error::PoleAtPoint(_)) => std::panic::panic_any(e),
                Err(e) => std::panic::panic_any(e),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRational, Var};

    #[test]
    fn symbolic_mode_is_identity() {
        let ctx = Ctx::symbolic();
        let s = Scalar::var("u").add(&Scalar::var("q"));
        assert_eq!(ctx.post(s.clone()), s);
    }

    #[test]
    fn sampled_mode_collapses_to_constant() {
        let mut point = Assignment::new();
        point.insert(Var::new("u"), GaussianRational::from_int(3));
        point.insert(Var::new("q"), GaussianRational::from_int(2));
        let ctx = Ctx::sampled(point);
        let s = Scalar::var("u").add(&Scalar::var("q"));
        assert_eq!(ctx.post(s), Scalar::from_int(5));
    }

    #[test]
    fn pole_raises_typed_panic() {
        let mut point = Assignment::new();
        point.insert(Var::new("u"), GaussianRational::from_int(1));
        let ctx = Ctx::sampled(point);
        // 1/(u - 1) has a pole at u = 1.
        let s = Scalar::one()
            .div(&Scalar::var("u").sub(&Scalar::one()))
            .unwrap();
        let err = std::panic::catch_unwind(move || ctx.post(s)).unwrap_err();
        let err = err.downcast_ref::<Error>().expect("typed panic");
        assert!(matches!(err, Error::PoleAtPoint(_)));
    }
}
