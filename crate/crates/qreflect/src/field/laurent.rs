//! Laurent polynomials over the Gaussian rationals.
//!
//! Term map `Monomial -> GaussianRational` with no zero coefficients stored.
//! All arithmetic is exact. Multiplication enforces the global degree guard:
//! if any product monomial exceeds the configured maximum total degree the
//! operation aborts with a typed panic payload (`Error::DegreeOverflow`) that
//! the CLI boundary catches and maps to a resource-abort exit. The guard
//! exists to stop runaway intermediate expressions before they exhaust memory;
//! it is not an ordinary error path.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicI64, Ordering as AtomicOrdering};

use crate::error::Error;
use crate::field::gaussian::GaussianRational;
use crate::field::monomial::{Monomial, Var};

static MAX_TOTAL_DEGREE: AtomicI64 = AtomicI64::new(512);

/// Configure the degree guard (default 512). Applies process-wide.
pub fn set_max_degree(limit: i64) {
    MAX_TOTAL_DEGREE.store(limit, AtomicOrdering::Relaxed);
}

pub fn max_degree() -> i64 {
    MAX_TOTAL_DEGREE.load(AtomicOrdering::Relaxed)
}

fn guard_degree(m: &Monomial) {
    let limit = max_degree();
    let degree = m.total_degree();
    if degree > limit {
        std::panic::panic_any(Error::DegreeOverflow { degree, limit });
    }
}

/// Exact Laurent polynomial. Invariant: no zero coefficients stored, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentPoly { terms }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        LaurentPoly::term(m, GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        LaurentPoly::from_monomial(Monomial::var(name))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// Largest monomial under the global order, with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let p = k.mul(m);
                    guard_degree(&p);
                    (p, c.clone())
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                guard_degree(&m);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// All variables appearing in the polynomial.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in m.vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars.sort();
        vars
    }

    /// Per-variable minimum exponent over all terms, as a monomial. Dividing
    /// by it yields a true polynomial whose per-variable minimum exponent is 0.
    pub fn monomial_content(&self) -> Monomial {
        let mut mins: BTreeMap<Var, i64> = BTreeMap::new();
        let mut first = true;
        for m in self.terms.keys() {
            if first {
                for (v, e) in m.vars() {
                    mins.insert(v, e);
                }
                first = false;
            } else {
                // variables absent from m have exponent 0
                let keys: Vec<Var> = mins.keys().copied().collect();
                for v in keys {
                    let e = m.exponent(v);
                    let entry = mins.get_mut(&v).unwrap();
                    if e < *entry {
                        *entry = e;
                    }
                }
                for (v, e) in m.vars() {
                    mins.entry(v).or_insert_with(|| e.min(0));
                }
            }
        }
        let mut out = Monomial::one();
        for (v, e) in mins {
            if e != 0 {
                out = out.mul(&Monomial::var_pow(v.name(), e));
            }
        }
        out
    }

    /// Substitute one variable by a monomial throughout.
    pub fn subst_var_monomial(&self, target: Var, replacement: &Monomial) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.subst_var(target, replacement), c.clone());
        }
        out
    }

    /// Exact evaluation at a point assigning every variable a Gaussian
    /// rational. Negative exponents require the assigned value to be nonzero.
    pub fn eval(&self, point: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, Error> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.vars() {
                let x = point.get(&v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                if e >= 0 {
                    val = &val * &x.pow(e as u32);
                } else {
                    if x.is_zero() {
                        return Err(Error::PoleAtPoint(format!("{v} = 0 with negative exponent")));
                    }
                    val = &val * &x.inv().pow((-e) as u32);
                }
            }
            acc = &acc + &val;
        }
        Ok(acc)
    }

    /// Evaluate every variable except `main`, producing a dense univariate
    /// polynomial (index = degree in `main`). Requires all exponents of the
    /// other variables to be >= 0 (true-polynomial inputs) and `main`
    /// exponents >= 0.
    pub fn eval_except(
        &self,
        main: Var,
        point: &BTreeMap<Var, GaussianRational>,
    ) -> Result<Vec<GaussianRational>, Error> {
        let mut out: Vec<GaussianRational> = Vec::new();
        for (m, c) in &self.terms {
            let (deg, rest) = m.split_var(main);
            assert!(deg >= 0, "eval_except expects a true polynomial");
            let mut val = c.clone();
            for (v, e) in rest.vars() {
                assert!(e >= 0, "eval_except expects a true polynomial");
                let x = point.get(&v).ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                val = &val * &x.pow(e as u32);
            }
            let deg = deg as usize;
            if out.len() <= deg {
                out.resize(deg + 1, GaussianRational::zero());
            }
            out[deg] = &out[deg] + &val;
        }
        while out.last().map(|c| c.is_zero()).unwrap_or(false) {
            out.pop();
        }
        Ok(out)
    }

    /// View as univariate in `main` with LaurentPoly coefficients, keyed by
    /// the (nonnegative) degree in `main`.
    pub fn by_variable(&self, main: Var) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (deg, rest) = m.split_var(main);
            out.entry(deg).or_insert_with(LaurentPoly::zero).add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Reassemble from a `by_variable` view.
    pub fn from_by_variable(main: Var, coeffs: &BTreeMap<i64, LaurentPoly>) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (deg, p) in coeffs {
            let shift = Monomial::var_pow(main.name(), *deg);
            out = out.add(&p.mul_monomial(&shift));
        }
        out
    }

    /// Degree in one variable: (min exponent, max exponent), None when zero.
    pub fn degree_in(&self, v: Var) -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        if self.terms.is_empty() {
            return None;
        }
        for m in self.terms.keys() {
            let e = m.exponent(v);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        Some((lo, hi))
    }

    /// Exact division by a known factor. Panics if the division is not exact
    /// (internal use only: divisors come from computed GCDs and contents).
    pub fn div_exact(&self, divisor: &LaurentPoly) -> LaurentPoly {
        self.try_div_exact(divisor)
            .expect("division was promised to be exact")
    }

    /// Division restricted to true polynomials: Some(quotient) when `divisor`
    /// divides exactly with a true-polynomial quotient, None otherwise.
    /// Leading-term elimination under the global order; a candidate quotient
    /// monomial with a negative exponent proves inexactness immediately, and
    /// nonnegative monomials below a fixed one are well-ordered, so the loop
    /// always terminates.
    pub fn try_div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let (dm, dc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let qm = rm.div(&dm);
            if qm.vars().any(|(_, e)| e < 0) {
                return None;
            }
            let qc = &rc / &dc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.mul(&LaurentPoly::term(qm, qc)));
        }
        Some(quot)
    }

    /// Substitute one variable by an exact constant, keeping the others
    /// symbolic. Requires nonnegative exponents of `target` (true-poly use).
    pub fn subst_var_const(&self, target: Var, value: &GaussianRational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(target);
            assert!(e >= 0, "subst_var_const expects a true polynomial in {}", target);
            out.add_term(rest, c * &value.pow(e as u32));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // print highest monomial first
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let coeff_str = c.to_string();
            let needs_parens = coeff_str.contains('+') || (coeff_str.contains('-') && !coeff_str.starts_with('-'));
            let piece = if m.is_one() {
                if needs_parens { format!("({coeff_str})") } else { coeff_str.clone() }
            } else if c.is_one() {
                m.to_string()
            } else if coeff_str == "-1" {
                format!("-{m}")
            } else if needs_parens {
                format!("({coeff_str})*{m}")
            } else {
                format!("{coeff_str}*{m}")
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(stripped) = piece.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
