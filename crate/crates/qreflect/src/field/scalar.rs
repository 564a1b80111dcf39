//! The fraction field of Laurent polynomials over Q(i), with a canonical
//! stored form.
//!
//! Canonical form: `num = m * A`, `den = B`, where `m` is a Laurent monomial,
//! `A` and `B` are true polynomials whose per-variable minimum exponent is 0,
//! `gcd(A, B) = 1`, and `B` is monic under the global monomial order. This
//! representation is unique, so equal rational functions have identical stored
//! representations and comparing coefficients is a map lookup. Every
//! constructor and arithmetic operation re-canonicalizes.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::gaussian::GaussianRational;
use crate::field::gcd::poly_gcd;
use crate::field::laurent::LaurentPoly;
use crate::field::monomial::{Monomial, Var};

/// Exact rational function in canonical form. Structural equality is semantic
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// A point assignment for exact evaluation.
pub type Assignment = BTreeMap<Var, GaussianRational>;

impl Scalar {
    /// Build and canonicalize num/den. Errors with `DivisionByZero` when the
    /// denominator is the zero polynomial.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonicalize(num, den))
    }

    fn canonicalize(num: LaurentPoly, den: LaurentPoly) -> Scalar {
        if num.is_zero() {
            return Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() };
        }
        // split off monomial content so GCD runs on true polynomials
        let mc_n = num.monomial_content();
        let mc_d = den.monomial_content();
        let a = num.mul_monomial(&mc_n.inv());
        let b = den.mul_monomial(&mc_d.inv());
        let g = poly_gcd(&a, &b);
        let (a, b) = if g.is_one() { (a, b) } else { (a.div_exact(&g), b.div_exact(&g)) };
        // monic denominator
        let lead = b.leading_term().expect("nonzero denominator").1.clone();
        let (a, b) = if lead.is_one() {
            (a, b)
        } else {
            let inv = lead.inv();
            (a.scale(&inv), b.scale(&inv))
        };
        let m = mc_n.div(&mc_d);
        Scalar { num: a.mul_monomial(&m), den: b }
    }

    pub fn zero() -> Scalar {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Scalar {
        Scalar { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn constant(c: GaussianRational) -> Scalar {
        Scalar { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::constant(GaussianRational::from_int(n))
    }

    /// The imaginary unit as a scalar.
    pub fn i() -> Scalar {
        Scalar::constant(GaussianRational::i())
    }

    pub fn var(name: &str) -> Scalar {
        Scalar::from_monomial(&Monomial::var(name))
    }

    pub fn from_monomial(m: &Monomial) -> Scalar {
        Scalar { num: LaurentPoly::from_monomial(m.clone()), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Scalar {
        Scalar::canonicalize(p, LaurentPoly::one())
    }

    /// `m - m^-1`, the ubiquitous building block.
    pub fn mono_minus_inv(m: &Monomial) -> Scalar {
        let p = LaurentPoly::from_monomial(m.clone())
            .sub(&LaurentPoly::from_monomial(m.inv()));
        Scalar::from_poly(p)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the scalar is a constant (degree-0 rational function).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Addition via the least common denominator: one GCD to find it, one
    /// canonicalization of the (smaller) result. When the denominators are
    /// coprime the sum is already in lowest terms: an irreducible factor of
    /// `den_a` dividing `num_a*den_b + num_b*den_a` would divide
    /// `num_a*den_b`, contradicting `gcd(num_a, den_a) = 1 = gcd(den_a, den_b)`
    /// (denominators have no monomial factors, so the monomial part of a
    /// numerator is irrelevant).
    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = poly_gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Scalar::zero();
            }
            let den = self.den.mul(&other.den);
            return Scalar { num, den };
        }
        let qa = self.den.div_exact(&g);
        let qb = other.den.div_exact(&g);
        let num = self.num.mul(&qb).add(&other.num.mul(&qa));
        let den = self.den.mul(&qb);
        Scalar::canonicalize(num, den)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    /// Multiplication with cross-cancellation. Writing each operand as
    /// `m·A / B` (monomial times true polynomial over a monic true
    /// polynomial, `gcd(A, B) = 1`), only `gcd(A_a, B_b)` and `gcd(A_b, B_a)`
    /// can be nontrivial; after dividing them out the four remaining factors
    /// are pairwise coprime, so the product is canonical by construction and
    /// needs no further GCD. Quotients of monic min-exponent-0 polynomials by
    /// their (necessarily min-exponent-0) divisors keep both properties.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let ma = self.num.monomial_content();
        let aa = self.num.mul_monomial(&ma.inv());
        let mb = other.num.monomial_content();
        let ab = other.num.mul_monomial(&mb.inv());
        let g1 = poly_gcd(&aa, &other.den);
        let (aa, bb) = if g1.is_one() {
            (aa, other.den.clone())
        } else {
            (aa.div_exact(&g1), other.den.div_exact(&g1))
        };
        let g2 = poly_gcd(&ab, &self.den);
        let (ab, ba) = if g2.is_one() {
            (ab, self.den.clone())
        } else {
            (ab.div_exact(&g2), self.den.div_exact(&g2))
        };
        let num = aa.mul(&ab).mul_monomial(&ma.mul(&mb));
        let den = ba.mul(&bb);
        Scalar { num, den }
    }

    /// Division with the same cross-cancellation scheme as `mul`; here the
    /// candidate pairs are `gcd(A_a, A_b)` and `gcd(B_a, B_b)`, and the
    /// denominator is re-scaled to monic (its leading coefficient lands in
    /// the numerator, which has no normalization to preserve).
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let ma = self.num.monomial_content();
        let aa = self.num.mul_monomial(&ma.inv());
        let mb = other.num.monomial_content();
        let ab = other.num.mul_monomial(&mb.inv());
        let g1 = poly_gcd(&aa, &ab);
        let (aa, ab) = if g1.is_one() {
            (aa, ab)
        } else {
            (aa.div_exact(&g1), ab.div_exact(&g1))
        };
        let g2 = poly_gcd(&self.den, &other.den);
        let (ba, bb) = if g2.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.div_exact(&g2), other.den.div_exact(&g2))
        };
        let mut num = aa.mul(&bb);
        let mut den = ba.mul(&ab);
        let lead = den.leading_term().expect("nonzero denominator").1.clone();
        if !lead.is_one() {
            let inv = lead.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Scalar { num: num.mul_monomial(&ma.div(&mb)), den })
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one().div(self)
    }

    /// Integer power by binary exponentiation; negative exponents require a
    /// nonzero scalar.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Scaling by a constant never disturbs canonical form (the denominator
    /// stays monic, coprimality is unaffected).
    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact evaluation; `PoleAtPoint` when the denominator vanishes.
    pub fn eval(&self, point: &Assignment) -> Result<GaussianRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!("den = {} vanishes", self.den)));
        }
        let n = self.num.eval(point)?;
        Ok(&n / &d)
    }

    /// Substitute one variable by a monomial in both numerator and
    /// denominator, re-canonicalizing.
    pub fn subst_var_monomial(&self, target: Var, replacement: &Monomial) -> Scalar {
        Scalar::canonicalize(
            self.num.subst_var_monomial(target, replacement),
            self.den.subst_var_monomial(target, replacement),
        )
    }

    /// All variables appearing in the scalar.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars = self.num.variables();
        for v in self.den.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort();
        vars
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() <= 1 {
                write!(f, "{}", self.num)
            } else {
                write!(f, "({})", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
