//! Formal calculus for the two non-rational scalar factors `r(·)` and `f(·)`
//! that decorate the trigonometric R-matrix.
//!
//! Neither factor is ever expanded (in the literature both are infinite
//! products); the engine only ever uses their functional relations:
//!
//! ```text
//!   r(x)·r(x⁻¹) = 1                      f(x)·f(x⁻¹) = 1
//!   r(xq²)      = cof(xq²)·r(x)          f(xq) = g(x)·f(x)⁻¹
//!
//!   cof(x) = (x − x⁻¹)(xq⁻² − x⁻¹q²) / (xq⁻¹ − x⁻¹q)²
//!   g(x)   = (xq − x⁻¹q⁻¹) / (x − x⁻¹)
//! ```
//!
//! Both cofactors are expressible through the single building block
//! `α(x) = (xq − x⁻¹q⁻¹)(xq⁻¹ − x⁻¹q)/(x − x⁻¹)²`, namely `cof(x) = α(xq⁻¹)`
//! and `α(x) = g(x)/g(xq⁻¹)`; consequently the shifted ratios collapse to
//!
//! ```text
//!   r(xqⁿ)/r(xq⁻ⁿ) = f(xqⁿ)/f(xq⁻ⁿ) = ∏_{i=1..n} α(x q^{n−2i+1}) .
//! ```
//!
//! Products of `r`/`f` symbols therefore live in a free abelian group on
//! canonical *orbit representatives*: the orbit of an argument under
//! `x ↦ xq², x ↦ x⁻¹` (for `r`) resp. `x ↦ xq, x ↦ x⁻¹` (for `f`) is
//! collapsed onto a single representative, and every move contributes an
//! exactly-known rational cofactor.  Arguments in distinct orbits stay as
//! irreducible symbols — they are retained and reported, never guessed away.

use std::collections::BTreeMap;
use std::fmt;

use crate::ctx::Ctx;
use crate::field::{Monomial, Scalar, Var};

/// Which of the two formal factors a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PfKind {
    R,
    F,
}

/// The symbolic (non-rational) part of a prefactor: exponent maps keyed by
/// canonical orbit-representative arguments.  This is the "class key" under
/// which scalar coefficients are grouped; two coefficient contributions merge
/// exactly when their `PfSymbols` agree structurally.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct PfSymbols {
    /// Exponent of `r` at each canonical argument; no zero exponents stored.
    pub rfactors: BTreeMap<Monomial, i64>,
    /// Exponent of `f` at each canonical argument; no zero exponents stored.
    pub ffactors: BTreeMap<Monomial, i64>,
}

impl PfSymbols {
    pub fn empty() -> PfSymbols {
        PfSymbols::default()
    }

    pub fn is_empty(&self) -> bool {
        self.rfactors.is_empty() && self.ffactors.is_empty()
    }

    /// Merge two canonical symbol sets by adding exponents.  Canonical
    /// representatives are closed under this merge, so no cofactor arises.
    fn merged(&self, other: &PfSymbols) -> PfSymbols {
        fn merge_into(dst: &mut BTreeMap<Monomial, i64>, src: &BTreeMap<Monomial, i64>) {
            for (arg, e) in src {
                let entry = dst.entry(arg.clone()).or_insert(0);
                *entry += e;
                if *entry == 0 {
                    dst.remove(arg);
                }
            }
        }
        let mut out = self.clone();
        merge_into(&mut out.rfactors, &other.rfactors);
        merge_into(&mut out.ffactors, &other.ffactors);
        out
    }
}

impl fmt::Display for PfSymbols {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (arg, e) in &self.rfactors {
            if !first {
                write!(f, " * ")?;
            }
            write!(f, "r({})^{}", arg, e)?;
            first = false;
        }
        for (arg, e) in &self.ffactors {
            if !first {
                write!(f, " * ")?;
            }
            write!(f, "f({})^{}", arg, e)?;
            first = false;
        }
        Ok(())
    }
}

/// A product of formal `r`/`f` symbols times an exact rational cofactor.
/// The identity element has empty maps and cofactor 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefactorElement {
    /// Exponent of `r` at each argument.
    pub rfactors: BTreeMap<Monomial, i64>,
    /// Exponent of `f` at each argument.
    pub ffactors: BTreeMap<Monomial, i64>,
    /// Accumulated rational multiplier; never zero.
    pub cofactor: Scalar,
}

impl Default for PrefactorElement {
    fn default() -> Self {
        PrefactorElement::one()
    }
}

/// `m − m⁻¹` as a rational function, the building block of every cofactor.
fn mmi(m: &Monomial) -> Scalar {
    Scalar::mono_minus_inv(m)
}

fn q() -> Monomial {
    Monomial::var("q")
}

/// `g(x) = (xq − x⁻¹q⁻¹)/(x − x⁻¹)`, the crossing multiplier of `f`.
pub fn crossing_g(x: &Monomial) -> Scalar {
    mmi(&x.mul(&q()))
        .div(&mmi(x))
        .expect("g(x) denominator x - x^-1 is nonzero for nontrivial x")
}

/// `cof(x) = (x − x⁻¹)(xq⁻² − x⁻¹q²)/(xq⁻¹ − x⁻¹q)²`, the multiplier picked
/// up by one q²-shift of `r`: `r(x) = cof(x)·r(xq⁻²)`.
pub fn shift_cofactor_r(x: &Monomial) -> Scalar {
    let num = mmi(x).mul(&mmi(&x.mul(&q().pow(-2))));
    let den = mmi(&x.mul(&q().pow(-1)));
    num.div(&den.mul(&den))
        .expect("cof(x) denominator is nonzero for x with nontrivial non-q part")
}

/// `α(x) = (xq − x⁻¹q⁻¹)(xq⁻¹ − x⁻¹q)/(x − x⁻¹)²`, the unitarity normalizer:
/// every reducible shifted ratio of `r` or `f` is a product of α-values.
pub fn alpha_at(x: &Monomial) -> Scalar {
    let num = mmi(&x.mul(&q())).mul(&mmi(&x.mul(&q().pow(-1))));
    let den = mmi(x);
    num.div(&den.mul(&den))
        .expect("alpha(x) denominator is nonzero for nontrivial x")
}

/// Canonicalize one symbol `kind(arg)^exp`, returning the orbit
/// representative, its exponent, and the rational cofactor of the moves used.
///
/// Orientation first: between `m` and `m⁻¹`, keep the one whose non-q
/// exponent vector has a positive first nonzero entry (variables in global
/// priority order); inversion flips the exponent and costs nothing because
/// `r(x⁻¹) = r(x)⁻¹` and `f(x⁻¹) = f(x)⁻¹`.  Then shift the q-exponent into
/// the window — `{0, 1}` for `r` (moves step by q²), `{0}` for `f` (moves
/// step by q, flipping the exponent sign each step).
///
/// Arguments that are pure q-powers are only oriented, never shifted: the
/// shift cofactors degenerate there (e.g. `cof(q)` has a vanishing
/// denominator), and no such argument arises in any shipped verification.
fn reduce_symbol(kind: PfKind, arg: &Monomial, exp: i64) -> (Monomial, i64, Scalar) {
    if exp == 0 {
        return (Monomial::one(), 0, Scalar::one());
    }
    let qv = Var::new("q");
    let (qexp, nonq) = arg.split_var(qv);

    // Orientation.
    let (mut arg, mut exp) = if nonq.is_one() {
        // Pure q-power: orient by the sign of the q-exponent, do not shift.
        if qexp < 0 {
            return (arg.inv(), -exp, Scalar::one());
        }
        return (arg.clone(), exp, Scalar::one());
    } else {
        let first = nonq
            .vars()
            .next()
            .map(|(_, e)| e)
            .expect("nonq is not the unit monomial");
        if first < 0 {
            (arg.inv(), -exp)
        } else {
            (arg.clone(), exp)
        }
    };

    let mut cof = Scalar::one();
    let mut k = arg.exponent(qv);
    match kind {
        PfKind::R => {
            // r(x) = cof(x)·r(xq⁻²)  and  r(xq²) = cof(xq²)·r(x).
            while k >= 2 {
                cof = cof.mul(
                    &shift_cofactor_r(&arg)
                        .pow(exp)
                        .expect("shift cofactor is invertible"),
                );
                arg = arg.mul(&q().pow(-2));
                k -= 2;
            }
            while k <= -1 {
                arg = arg.mul(&q().pow(2));
                cof = cof.mul(
                    &shift_cofactor_r(&arg)
                        .pow(-exp)
                        .expect("shift cofactor is invertible"),
                );
                k += 2;
            }
        }
        PfKind::F => {
            // f(x)^e = g(xq⁻¹)^e·f(xq⁻¹)^{−e}  (down) and
            // f(x)^e = g(x)^e·f(xq)^{−e}        (up); each step flips e.
            while k >= 1 {
                let down = arg.mul(&q().pow(-1));
                cof = cof.mul(&crossing_g(&down).pow(exp).expect("g is invertible"));
                arg = down;
                exp = -exp;
                k -= 1;
            }
            while k <= -1 {
                cof = cof.mul(&crossing_g(&arg).pow(exp).expect("g is invertible"));
                arg = arg.mul(&q());
                exp = -exp;
                k += 1;
            }
        }
    }
    (arg, exp, cof)
}

impl PrefactorElement {
    /// The multiplicative identity: empty maps, cofactor 1.
    pub fn one() -> PrefactorElement {
        PrefactorElement {
            rfactors: BTreeMap::new(),
            ffactors: BTreeMap::new(),
            cofactor: Scalar::one(),
        }
    }

    /// A single `r(arg)^exp`, canonicalized on construction.
    pub fn r_symbol(arg: &Monomial, exp: i64) -> PrefactorElement {
        let mut e = PrefactorElement::one();
        e.absorb(PfKind::R, arg, exp);
        e
    }

    /// A single `f(arg)^exp`, canonicalized on construction.
    pub fn f_symbol(arg: &Monomial, exp: i64) -> PrefactorElement {
        let mut e = PrefactorElement::one();
        e.absorb(PfKind::F, arg, exp);
        e
    }

    /// A pure rational multiplier (must be nonzero).
    pub fn scalar(s: Scalar) -> PrefactorElement {
        assert!(!s.is_zero(), "prefactor cofactor must be nonzero");
        PrefactorElement {
            rfactors: BTreeMap::new(),
            ffactors: BTreeMap::new(),
            cofactor: s,
        }
    }

    fn absorb(&mut self, kind: PfKind, arg: &Monomial, exp: i64) {
        let (rep, e, cof) = reduce_symbol(kind, arg, exp);
        self.cofactor = self.cofactor.mul(&cof);
        if e == 0 {
            return;
        }
        let map = match kind {
            PfKind::R => &mut self.rfactors,
            PfKind::F => &mut self.ffactors,
        };
        let entry = map.entry(rep).or_insert(0);
        *entry += e;
        if *entry == 0 {
            if let Some((key, _)) = map.iter().find(|(_, v)| **v == 0) {
                let key = key.clone();
                map.remove(&key);
            }
        }
    }

    /// The class key (symbol maps without the cofactor).
    pub fn symbols(&self) -> PfSymbols {
        PfSymbols {
            rfactors: self.rfactors.clone(),
            ffactors: self.ffactors.clone(),
        }
    }

    /// Reassemble from a class key and a coefficient.
    pub fn from_parts(symbols: PfSymbols, cofactor: Scalar) -> PrefactorElement {
        PrefactorElement {
            rfactors: symbols.rfactors,
            ffactors: symbols.ffactors,
            cofactor,
        }
    }

    /// Multiplicative inverse: negate all exponents, invert the cofactor.
    pub fn inv(&self) -> PrefactorElement {
        PrefactorElement {
            rfactors: self.rfactors.iter().map(|(m, e)| (m.clone(), -e)).collect(),
            ffactors: self.ffactors.iter().map(|(m, e)| (m.clone(), -e)).collect(),
            cofactor: self.cofactor.inv().expect("cofactor is nonzero"),
        }
    }
}

impl fmt::Display for PrefactorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms = self.symbols();
        if syms.is_empty() {
            return write!(f, "({})", self.cofactor);
        }
        write!(f, "{}", syms)?;
        if !self.cofactor.is_one() {
            write!(f, " * ({})", self.cofactor)?;
        }
        Ok(())
    }
}

/// Multiply two prefactor elements: exponent maps added, cofactors
/// multiplied, then reduced.  Commutative and associative.
pub fn pf_mul(a: &PrefactorElement, b: &PrefactorElement) -> PrefactorElement {
    let mut out = PrefactorElement {
        rfactors: a.rfactors.clone(),
        ffactors: a.ffactors.clone(),
        cofactor: a.cofactor.mul(&b.cofactor),
    };
    for (arg, e) in &b.rfactors {
        let entry = out.rfactors.entry(arg.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            out.rfactors.remove(arg);
        }
    }
    for (arg, e) in &b.ffactors {
        let entry = out.ffactors.entry(arg.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            out.ffactors.remove(arg);
        }
    }
    pf_reduce(&out)
}

/// Replace every argument by its canonical orbit representative, updating the
/// cofactor with the exactly-known rational multipliers of the moves used.
/// Idempotent; irreducible symbols are retained, never guessed away.
pub fn pf_reduce(a: &PrefactorElement) -> PrefactorElement {
    let mut out = PrefactorElement::scalar(a.cofactor.clone());
    for (arg, e) in &a.rfactors {
        out.absorb(PfKind::R, arg, *e);
    }
    for (arg, e) in &a.ffactors {
        out.absorb(PfKind::F, arg, *e);
    }
    out
}

/// True iff the element is a pure scalar (both symbol maps empty).
pub fn pf_is_trivial(a: &PrefactorElement) -> bool {
    a.rfactors.is_empty() && a.ffactors.is_empty()
}

/// A finite sum of prefactor classes with exact scalar coefficients:
/// the universal coefficient ring for matrix entries and word coefficients.
///
/// Keys are canonical [`PfSymbols`]; values are nonzero [`Scalar`]s.  The
/// empty map is zero; the map `{∅ ↦ s}` is the embedded scalar `s`.  A
/// verification residual vanishes exactly when every class coefficient is
/// zero — an irreducible symbol class with nonzero coefficient is a genuine
/// (and reportable) failure witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coeff {
    terms: BTreeMap<PfSymbols, Scalar>,
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::default()
    }

    pub fn one() -> Coeff {
        Coeff::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Coeff {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(PfSymbols::empty(), s);
        }
        Coeff { terms }
    }

    pub fn from_int(n: i64) -> Coeff {
        Coeff::from_scalar(Scalar::from_int(n))
    }

    pub fn from_prefactor(p: &PrefactorElement) -> Coeff {
        let p = pf_reduce(p);
        let mut terms = BTreeMap::new();
        if !p.cofactor.is_zero() {
            terms.insert(p.symbols(), p.cofactor);
        }
        Coeff { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(scalar) iff no formal symbols are present (zero counts, as 0).
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            if let Some(s) = self.terms.get(&PfSymbols::empty()) {
                return Some(s.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_one())
    }

    /// Iterate over (class, coefficient) pairs in canonical order.
    pub fn classes(&self) -> impl Iterator<Item = (&PfSymbols, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_classes(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: PfSymbols, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&s);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, s);
            }
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.insert(k.clone(), s.clone());
        }
        out
    }

    pub fn neg(&self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(k, s)| (k.clone(), s.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    /// Product; class keys combine by exponent addition (canonical
    /// representatives are closed under merging, so no new cofactor arises),
    /// coefficients multiply and are post-processed by the context.
    pub fn mul(&self, other: &Coeff, ctx: &Ctx) -> Coeff {
        let mut out = Coeff::zero();
        for (ka, sa) in &self.terms {
            for (kb, sb) in &other.terms {
                let key = ka.merged(kb);
                let s = ctx.post(sa.mul(sb));
                out.insert(key, s);
            }
        }
        out
    }

    /// Multiply by a bare scalar.
    pub fn scale(&self, s: &Scalar, ctx: &Ctx) -> Coeff {
        if s.is_zero() {
            return Coeff::zero();
        }
        let mut out = Coeff::zero();
        for (k, c) in &self.terms {
            out.insert(k.clone(), ctx.post(c.mul(s)));
        }
        out
    }

    /// Multiply by a prefactor element (its cofactor folds into coefficients).
    pub fn mul_prefactor(&self, p: &PrefactorElement, ctx: &Ctx) -> Coeff {
        self.mul(&Coeff::from_prefactor(p), ctx)
    }

    /// Post-process all coefficients through the context (used when entering
    /// sampled mode with coefficients built symbolically).
    pub fn posted(&self, ctx: &Ctx) -> Coeff {
        let mut out = Coeff::zero();
        for (k, s) in &self.terms {
            out.insert(k.clone(), ctx.post(s.clone()));
        }
        out
    }

    /// Multiplicative inverse, defined only for a single-class element.
    pub fn inv(&self) -> crate::Result<Coeff> {
        if self.terms.len() != 1 {
            return Err(crate::Error::SingularCoefficientMatrix(format!(
                "cannot invert a {}-class coefficient",
                self.terms.len()
            )));
        }
        let (k, s) = self.terms.iter().next().expect("len == 1");
        let key = PfSymbols {
            rfactors: k.rfactors.iter().map(|(m, e)| (m.clone(), -e)).collect(),
            ffactors: k.ffactors.iter().map(|(m, e)| (m.clone(), -e)).collect(),
        };
        let mut terms = BTreeMap::new();
        terms.insert(key, s.inv()?);
        Ok(Coeff { terms })
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if k.is_empty() {
                write!(f, "({})", s)?;
            } else {
                write!(f, "{} * ({})", k, s)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Monomial {
        Monomial::var("u")
    }

    fn uq(k: i64) -> Monomial {
        u().mul(&Monomial::var_pow("q", k))
    }

    /// ∏_{i=1..n} α(u q^{n−2i+1}), the independent closed form both shifted
    /// ratios must collapse to.
    fn alpha_product(n: i64) -> Scalar {
        let mut p = Scalar::one();
        for i in 1..=n {
            p = p.mul(&alpha_at(&uq(n - 2 * i + 1)));
        }
        p
    }

    #[test]
    fn r_times_r_inverse_is_one() {
        let a = PrefactorElement::r_symbol(&u(), 1);
        let b = PrefactorElement::r_symbol(&u().inv(), 1);
        let p = pf_mul(&a, &b);
        assert!(pf_is_trivial(&p));
        assert!(p.cofactor.is_one());
    }

    #[test]
    fn f_times_f_inverse_is_one() {
        let x = u().mul(&Monomial::var("v").inv());
        let a = PrefactorElement::f_symbol(&x, 1);
        let b = PrefactorElement::f_symbol(&x.inv(), 1);
        let p = pf_mul(&a, &b);
        assert!(pf_is_trivial(&p));
        assert!(p.cofactor.is_one());
    }

    #[test]
    fn r_and_f_at_unrelated_arguments_stay_formal() {
        let a = PrefactorElement::r_symbol(&u(), 1);
        let b = PrefactorElement::f_symbol(&Monomial::var("v"), 1);
        let p = pf_mul(&a, &b);
        assert!(!pf_is_trivial(&p));
        assert_eq!(p.rfactors.len(), 1);
        assert_eq!(p.ffactors.len(), 1);
        assert!(p.cofactor.is_one());
    }

    #[test]
    fn shifted_r_ratio_n1_is_alpha() {
        // r(uq)/r(uq⁻¹) → α(u), empty symbol maps.
        let a = PrefactorElement::r_symbol(&uq(1), 1);
        let b = PrefactorElement::r_symbol(&uq(-1), -1);
        let p = pf_mul(&a, &b);
        assert!(pf_is_trivial(&p));
        assert_eq!(p.cofactor, alpha_at(&u()));
    }

    #[test]
    fn shifted_r_ratio_n2_is_alpha_product() {
        // r(uq²)/r(uq⁻²) → α(uq)·α(uq⁻¹).
        let a = PrefactorElement::r_symbol(&uq(2), 1);
        let b = PrefactorElement::r_symbol(&uq(-2), -1);
        let p = pf_mul(&a, &b);
        assert!(pf_is_trivial(&p));
        assert_eq!(p.cofactor, alpha_at(&uq(1)).mul(&alpha_at(&uq(-1))));
    }

    #[test]
    fn shifted_ratios_match_alpha_product_for_both_factors() {
        for n in 1..=4 {
            let expected = alpha_product(n);
            for mk in [PrefactorElement::r_symbol, PrefactorElement::f_symbol] {
                let a = mk(&uq(n), 1);
                let b = mk(&uq(-n), -1);
                let p = pf_mul(&a, &b);
                assert!(pf_is_trivial(&p), "ratio n={} not fully reduced", n);
                assert_eq!(p.cofactor, expected, "ratio n={} cofactor mismatch", n);
            }
        }
    }

    #[test]
    fn odd_r_shift_is_irreducible() {
        // r(u)/r(uq) has no reduction; both symbols are retained.
        let a = PrefactorElement::r_symbol(&u(), 1);
        let b = PrefactorElement::r_symbol(&uq(1), -1);
        let p = pf_mul(&a, &b);
        assert!(!pf_is_trivial(&p));
        assert_eq!(p.rfactors.len(), 2);
        assert!(p.cofactor.is_one());
    }

    #[test]
    fn orientation_and_shift_compose() {
        // r(u⁻¹q²)·r(u) = cof(u)·(r(u)⁻¹·r(u)) = α(uq⁻¹).
        let a = PrefactorElement::r_symbol(&u().inv().mul(&Monomial::var_pow("q", 2)), 1);
        let b = PrefactorElement::r_symbol(&u(), 1);
        let p = pf_mul(&a, &b);
        assert!(pf_is_trivial(&p));
        assert_eq!(p.cofactor, alpha_at(&uq(-1)));
    }

    #[test]
    fn f_orientation_and_shift_compose() {
        // f(uq)·f(u⁻¹q) = g(u)/g(uq⁻¹) = α(u).
        let a = PrefactorElement::f_symbol(&uq(1), 1);
        let b = PrefactorElement::f_symbol(&u().inv().mul(&q()), 1);
        let p = pf_mul(&a, &b);
        assert!(pf_is_trivial(&p));
        assert_eq!(p.cofactor, alpha_at(&u()));
    }

    #[test]
    fn reduce_is_idempotent() {
        // A deliberately messy element: raw maps with non-canonical args.
        let mut raw = PrefactorElement::one();
        raw.rfactors.insert(uq(5), 2);
        raw.rfactors.insert(u().inv().mul(&Monomial::var_pow("q", -3)), 1);
        raw.ffactors.insert(uq(2), -1);
        raw.cofactor = Scalar::var("v");
        let once = pf_reduce(&raw);
        let twice = pf_reduce(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn reduction_commutes_with_multiplication() {
        let mut a = PrefactorElement::one();
        a.rfactors.insert(uq(3), 1);
        a.ffactors.insert(uq(-2), 2);
        let mut b = PrefactorElement::one();
        b.rfactors.insert(uq(-1), -1);
        b.ffactors.insert(u().inv(), 1);
        let lhs = pf_mul(&a, &b);
        let rhs = pf_mul(&pf_reduce(&a), &pf_reduce(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pure_q_power_arguments_are_only_oriented() {
        let a = PrefactorElement::r_symbol(&Monomial::var_pow("q", -3), 1);
        assert_eq!(a.rfactors.len(), 1);
        assert_eq!(
            a.rfactors.iter().next().unwrap(),
            (&Monomial::var_pow("q", 3), &-1)
        );
        assert!(a.cofactor.is_one());
    }

    #[test]
    fn display_renders_symbols_and_cofactor() {
        let a = pf_mul(
            &PrefactorElement::r_symbol(&uq(2), 1),
            &PrefactorElement::f_symbol(&u().mul(&Monomial::var("v").inv()), -1),
        );
        let s = format!("{}", a);
        assert!(s.contains("r(u)^1"), "got {}", s);
        assert!(s.contains("f(u*v^-1)^-1"), "got {}", s);
        assert!(s.contains(" * ("), "cofactor should be rendered: {}", s);
    }

    #[test]
    fn coeff_ring_basics() {
        let ctx = Ctx::symbolic();
        let r = Coeff::from_prefactor(&PrefactorElement::r_symbol(&u(), 1));
        let rinv = Coeff::from_prefactor(&PrefactorElement::r_symbol(&u(), -1));
        assert!(r.mul(&rinv, &ctx).is_one());

        // (r + 1)(r − 1) = r² − 1.
        let sum = r.add(&Coeff::one());
        let dif = r.sub(&Coeff::one());
        let prod = sum.mul(&dif, &ctx);
        let r2 = r.mul(&r, &ctx);
        assert_eq!(prod, r2.sub(&Coeff::one()));

        // Cancellation to exact zero.
        assert!(r.sub(&r).is_zero());
    }

    #[test]
    fn coeff_sampled_mode_evaluates_coefficients_only() {
        use crate::field::{Assignment, GaussianRational};
        let mut point = Assignment::new();
        point.insert(Var::new("u"), GaussianRational::from_int(3));
        point.insert(Var::new("q"), GaussianRational::from_int(2));
        let ctx = Ctx::sampled(point);

        // f(u/v)·(u−u⁻¹) with coefficient evaluated at u=3, but the symbol
        // argument u/v kept fully symbolic.
        let x = u().mul(&Monomial::var("v").inv());
        let f = Coeff::from_prefactor(&PrefactorElement::f_symbol(&x, 1));
        let c = f.scale(&Scalar::mono_minus_inv(&u()), &ctx);
        let (key, s) = c.classes().next().unwrap();
        assert_eq!(key.ffactors.iter().next().unwrap().0, &x);
        assert_eq!(s, &Scalar::from_int(3).sub(&Scalar::from_int(1).div(&Scalar::from_int(3)).unwrap()));
    }

    #[test]
    fn coeff_inverse_of_single_class() {
        let ctx = Ctx::symbolic();
        let p = pf_mul(
            &PrefactorElement::r_symbol(&u(), 1),
            &PrefactorElement::scalar(Scalar::var("q")),
        );
        let c = Coeff::from_prefactor(&p);
        let cinv = c.inv().unwrap();
        assert!(c.mul(&cinv, &ctx).is_one());

        let two_class = c.add(&Coeff::one());
        assert!(two_class.inv().is_err());
    }
}
