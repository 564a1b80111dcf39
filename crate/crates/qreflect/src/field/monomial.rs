//! Interned variables and signed-exponent monomials.
//!
//! A `Monomial` is a finite map variable -> nonzero signed exponent; every
//! monomial is invertible. Spectral parameters, coupling constants and the
//! central-charge symbols all live here as ordinary variables.
//!
//! The variable order is fixed (u, v, w, a, gamma, gtilde, q, s, then anything
//! else alphabetically) and `Monomial`'s `Ord` is lexicographic on exponent
//! vectors over that order. This single total order drives every canonical
//! choice in the engine: leading terms of polynomials, prefactor orbit
//! representatives, and the normal order of operator arguments. Determinism of
//! all reports rests on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Interned variable name. Copy, cheap to compare; ordering is by the fixed
/// priority list first, then alphabetical.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var(&'static str);

/// Priority prefix of the global variable order. Variables not listed compare
/// after these, alphabetically.
const PRIORITY: [&str; 8] = ["u", "v", "w", "a", "gamma", "gtilde", "q", "s"];

fn rank(name: &str) -> usize {
    PRIORITY.iter().position(|p| *p == name).unwrap_or(PRIORITY.len())
}

fn interner() -> &'static Mutex<Vec<&'static str>> {
    static INTERNER: OnceLock<Mutex<Vec<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(Vec::new()))
}

impl Var {
    /// Intern a variable by name. Repeated calls with the same name return the
    /// same `Var`.
    pub fn new(name: &str) -> Var {
        let mut table = interner().lock().unwrap();
        if let Some(existing) = table.iter().find(|n| **n == name) {
            return Var(existing);
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        table.push(leaked);
        Var(leaked)
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        (rank(self.0), self.0).cmp(&(rank(other.0), other.0))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A Laurent monomial: product of variables raised to signed integer powers.
/// The exponent map never stores zeros, so structural equality is semantic
/// equality. The empty monomial is 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Var, i64>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: BTreeMap::new() }
    }

    pub fn var(name: &str) -> Monomial {
        Monomial::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, e: i64) -> Monomial {
        let mut exps = BTreeMap::new();
        if e != 0 {
            exps.insert(Var::new(name), e);
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i64 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.exps.iter().map(|(v, e)| (*v, *e))
    }

    /// Sum of absolute exponents; the quantity the degree guard bounds.
    pub fn total_degree(&self) -> i64 {
        self.exps.values().map(|e| e.abs()).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let entry = exps.entry(*v).or_insert(0);
            *entry += e;
            if *entry == 0 {
                exps.remove(v);
            }
        }
        Monomial { exps }
    }

    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|(v, e)| (*v, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|(v, e)| (*v, e * k)).collect() }
    }

    /// Quotient self / other (always defined: monomials are units).
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Substitute `target -> replacement^old_exponent` (total substitution on
    /// one variable); other variables are untouched.
    pub fn subst_var(&self, target: Var, replacement: &Monomial) -> Monomial {
        let mut out = Monomial::one();
        for (v, e) in &self.exps {
            if *v == target {
                out = out.mul(&replacement.pow(*e));
            } else {
                out = out.mul(&Monomial { exps: BTreeMap::from([(*v, *e)]) });
            }
        }
        out
    }

    /// Substitute every variable that appears in `map`, leaving others alone.
    pub fn subst(&self, map: &BTreeMap<Var, Monomial>) -> Monomial {
        let mut out = Monomial::one();
        for (v, e) in &self.exps {
            match map.get(v) {
                Some(rep) => out = out.mul(&rep.pow(*e)),
                None => out = out.mul(&Monomial { exps: BTreeMap::from([(*v, *e)]) }),
            }
        }
        out
    }

    /// Split off the exponent of one variable: returns (exponent of `v`,
    /// monomial with `v` removed).
    pub fn split_var(&self, v: Var) -> (i64, Monomial) {
        let e = self.exponent(v);
        let mut rest = self.exps.clone();
        rest.remove(&v);
        (e, Monomial { exps: rest })
    }

    /// The first (highest-priority) variable with a nonzero exponent, if any.
    pub fn leading_var(&self) -> Option<(Var, i64)> {
        self.exps.iter().next().map(|(v, e)| (*v, *e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Lexicographic on exponent vectors over the global variable order;
    /// a larger exponent on the first differing variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut it_a = self.exps.iter().peekable();
        let mut it_b = other.exps.iter().peekable();
        loop {
            match (it_a.peek(), it_b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, ea)), None) => {
                    // remaining vars of a compare against implicit zeros of b
                    if **ea != 0 {
                        return ea.cmp(&&0);
                    }
                    it_a.next();
                }
                (None, Some((_, eb))) => {
                    if **eb != 0 {
                        return 0.cmp(*eb);
                    }
                    it_b.next();
                }
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {
                                it_a.next();
                                it_b.next();
                            }
                            ord => return ord,
                        }
                    }
                    // a has an earlier variable than b: compare its exponent to 0
                    Ordering::Less => return ea.cmp(&&0),
                    Ordering::Greater => return 0.cmp(*eb),
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_priority_then_alpha() {
        let u = Var::new("u");
        let v = Var::new("v");
        let q = Var::new("q");
        let z = Var::new("zeta");
        let b = Var::new("beta");
        assert!(u < v && v < q);
        assert!(q < b && b < z);
    }

    #[test]
    fn monomial_arith() {
        let m = Monomial::var("u").mul(&Monomial::var_pow("q", -2));
        assert_eq!(m.mul(&m.inv()), Monomial::one());
        assert_eq!(m.pow(2), Monomial::var_pow("u", 2).mul(&Monomial::var_pow("q", -4)));
        assert_eq!(m.total_degree(), 3);
    }

    #[test]
    fn order_matches_normal_order_contract() {
        // u > v, and any positive power of u dominates v.
        let u = Monomial::var("u");
        let v = Monomial::var("v");
        assert!(u > v);
        // u*gamma^-2 sorts below u (first difference at gamma: -2 < 0).
        let ug = u.mul(&Monomial::var_pow("gamma", -2));
        assert!(u > ug);
        // v has u-exponent 0 which beats u^-1.
        assert!(v > u.inv());
        // one sits between u and u^-1
        assert!(u > Monomial::one() && Monomial::one() > u.inv());
    }

    #[test]
    fn substitution() {
        // q -> s^2 inside u*q^-2 gives u*s^-4
        let m = Monomial::var("u").mul(&Monomial::var_pow("q", -2));
        let out = m.subst_var(Var::new("q"), &Monomial::var_pow("s", 2));
        assert_eq!(out, Monomial::var("u").mul(&Monomial::var_pow("s", -4)));
    }
}
