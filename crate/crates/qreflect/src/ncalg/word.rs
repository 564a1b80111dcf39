//! Words in operator symbols and exact noncommutative polynomials.
//!
//! A [`GenSymbol`] is one operator factor: a generator family, its component
//! indices, the algebra copy it lives on (the `leg` tag), and a formal
//! spectral argument (an invertible Laurent monomial).  A [`Word`] is an
//! ordered product of symbols; symbols on *distinct* legs commute, so words
//! are canonically stored with their symbols stably sorted by leg — relative
//! order within a leg is preserved exactly.
//!
//! An [`NCPoly`] is a finite sum of words with [`Coeff`] coefficients
//! (exact rational functions times formal prefactor classes).  Addition and
//! multiplication are exact; multiplication concatenates words and never
//! reorders same-leg symbols — reordering is the job of the rewrite engine.

use std::collections::BTreeMap;
use std::fmt;

use crate::ctx::Ctx;
use crate::field::Monomial;
use crate::prefactor::Coeff;

/// Generator families.  The declaration order doubles as the tie-break order
/// for normal ordering when two adjacent symbols carry identical arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// One-index vector generator Φ_±(u) (index 0 = +, 1 = −).
    Phi,
    /// L⁺(u) matrix generator.
    Lp,
    /// L⁻(u) matrix generator.
    Lm,
    /// Antipode image S(L⁺(u)) = L⁺(u)⁻¹, kept as its own symbol family.
    LpInv,
    /// Antipode image S(L⁻(u)) = L⁻(u)⁻¹.
    LmInv,
    /// A reflection-equation solution without central extension.
    K0,
    /// Extended reflection-algebra generator K^{(++)}(u).
    Kpp,
    /// K^{(+−)}(u).
    Kpm,
    /// K^{(−+)}(u).
    Kmp,
    /// K^{(−−)}(u).
    Kmm,
    /// The quantum-current combination L(u) = L⁺(uγ⁻²)·S(L⁻(u)).  It only
    /// ever appears as a slot tag in relation schemas and is realized by its
    /// expansion into `Lp`/`LmInv` words; it never occurs inside a [`Word`].
    QCur,
}

impl Family {
    /// Number of component indices the family carries.
    pub fn arity(self) -> usize {
        match self {
            Family::Phi => 1,
            _ => 2,
        }
    }

    /// Number of distinct component choices (2 for vectors, 4 for matrices).
    pub fn component_count(self) -> usize {
        match self {
            Family::Phi => 2,
            _ => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Phi => "Phi",
            Family::Lp => "Lp",
            Family::Lm => "Lm",
            Family::LpInv => "LpInv",
            Family::LmInv => "LmInv",
            Family::K0 => "K0",
            Family::Kpp => "Kpp",
            Family::Kpm => "Kpm",
            Family::Kmp => "Kmp",
            Family::Kmm => "Kmm",
            Family::QCur => "L",
        }
    }

    /// Flatten component indices to a linear index in `0..component_count()`.
    pub fn component_index(self, indices: [u8; 2]) -> usize {
        match self.arity() {
            1 => indices[0] as usize,
            _ => 2 * indices[0] as usize + indices[1] as usize,
        }
    }

    /// Inverse of [`Family::component_index`].
    pub fn component_from_index(self, index: usize) -> [u8; 2] {
        match self.arity() {
            1 => [index as u8, 0],
            _ => [(index / 2) as u8, (index % 2) as u8],
        }
    }
}

/// One operator factor in a word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub family: Family,
    /// Component indices; `indices[1]` is unused (zero) for arity-1 families.
    pub indices: [u8; 2],
    /// Algebra-copy tag: symbols on distinct legs commute.
    pub leg: u8,
    /// Formal spectral argument.
    pub arg: Monomial,
}

impl GenSymbol {
    pub fn new(family: Family, indices: [u8; 2], leg: u8, arg: Monomial) -> GenSymbol {
        GenSymbol {
            family,
            indices,
            leg,
            arg,
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.name())?;
        match self.family.arity() {
            1 => {
                let sign = if self.indices[0] == 0 { "+" } else { "-" };
                write!(f, "[{sign}]")?;
            }
            _ => write!(f, "[{},{}]", self.indices[0] + 1, self.indices[1] + 1)?,
        }
        if self.leg != 0 {
            write!(f, "@{}", self.leg)?;
        }
        write!(f, "({})", self.arg)
    }
}

/// An ordered product of symbols, stored with symbols stably sorted by leg.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    symbols: Vec<GenSymbol>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn single(symbol: GenSymbol) -> Word {
        Word {
            symbols: vec![symbol],
        }
    }

    /// Canonicalizing constructor: stable-sorts the symbols by leg.
    pub fn from_symbols(mut symbols: Vec<GenSymbol>) -> Word {
        symbols.sort_by_key(|s| s.leg);
        Word { symbols }
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Concatenation (respecting the leg-sorted storage convention).
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        Word::from_symbols(symbols)
    }

    /// Replace the adjacent pair at `pos`, `pos + 1` with two new symbols on
    /// the same leg.  Used by the rewrite engine; preserves leg-sortedness
    /// because the replacements carry the same leg tag as the originals.
    pub(crate) fn splice_pair(&self, pos: usize, left: GenSymbol, right: GenSymbol) -> Word {
        let mut symbols = self.symbols.clone();
        symbols[pos] = left;
        symbols[pos + 1] = right;
        Word { symbols }
    }

    /// Remove the adjacent pair at `pos`, `pos + 1` (δ-contraction).
    pub(crate) fn remove_pair(&self, pos: usize) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.drain(pos..pos + 2);
        Word { symbols }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Exact noncommutative polynomial: finite sum of words with coefficients in
/// the prefactor-decorated rational-function ring.  The zero coefficient is
/// never stored; iteration order (and hence the Display dump) is the
/// deterministic `Word` order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Coeff>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn one() -> NCPoly {
        NCPoly::from_word(Word::empty(), Coeff::one())
    }

    pub fn from_word(word: Word, coeff: Coeff) -> NCPoly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NCPoly { terms }
    }

    pub fn from_symbol(symbol: GenSymbol) -> NCPoly {
        NCPoly::from_word(Word::single(symbol), Coeff::one())
    }

    pub fn constant(coeff: Coeff) -> NCPoly {
        NCPoly::from_word(Word::empty(), coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, word: &Word) -> Coeff {
        self.terms.get(word).cloned().unwrap_or_else(Coeff::zero)
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = existing.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub(crate) fn remove_term(&mut self, word: &Word) -> Option<Coeff> {
        self.terms.remove(word)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    /// Ordered product: words concatenate (same-leg symbols keep their
    /// relative order), coefficients multiply.
    pub fn mul(&self, other: &NCPoly, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul(cb, ctx));
            }
        }
        out
    }

    /// Multiply every coefficient by `c` (coefficients are central).
    pub fn scale(&self, c: &Coeff, ctx: &Ctx) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, existing) in &self.terms {
            out.add_term(w.clone(), existing.mul(c, ctx));
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (word, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("  +  ")?;
            }
            write!(f, "{coeff} {word}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    fn phi(sign: u8, arg: &str) -> GenSymbol {
        GenSymbol::new(Family::Phi, [sign, 0], 0, Monomial::var(arg))
    }

    fn phi_on(leg: u8, sign: u8, arg: &str) -> GenSymbol {
        GenSymbol::new(Family::Phi, [sign, 0], leg, Monomial::var(arg))
    }

    #[test]
    fn words_store_leg_sorted_with_stable_order_within_leg() {
        let w = Word::from_symbols(vec![
            phi_on(1, 0, "u"),
            phi_on(0, 1, "v"),
            phi_on(1, 1, "w"),
            phi_on(0, 0, "u"),
        ]);
        let legs: Vec<u8> = w.symbols().iter().map(|s| s.leg).collect();
        assert_eq!(legs, vec![0, 0, 1, 1]);
        // Within each leg the original relative order is preserved.
        assert_eq!(w.symbols()[0].indices[0], 1);
        assert_eq!(w.symbols()[1].indices[0], 0);
        assert_eq!(w.symbols()[2].indices[0], 0);
        assert_eq!(w.symbols()[3].indices[0], 1);
    }

    #[test]
    fn cross_leg_products_commute() {
        let ctx = Ctx::symbolic();
        let a = NCPoly::from_symbol(phi_on(0, 0, "u"));
        let b = NCPoly::from_symbol(phi_on(1, 1, "v"));
        assert_eq!(a.mul(&b, &ctx), b.mul(&a, &ctx));
    }

    #[test]
    fn same_leg_products_do_not_commute() {
        let ctx = Ctx::symbolic();
        let a = NCPoly::from_symbol(phi(0, "u"));
        let b = NCPoly::from_symbol(phi(1, "v"));
        assert_ne!(a.mul(&b, &ctx), b.mul(&a, &ctx));
    }

    #[test]
    fn addition_cancels_equal_words() {
        let a = NCPoly::from_symbol(phi(0, "u"));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn scaling_by_zero_annihilates() {
        let ctx = Ctx::symbolic();
        let a = NCPoly::from_symbol(phi(0, "u"));
        assert!(a.scale(&Coeff::zero(), &ctx).is_zero());
        let two = a.scale(&Coeff::from_int(2), &ctx);
        assert_eq!(
            two.coeff_of(&Word::single(phi(0, "u"))).as_scalar().unwrap(),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn display_is_deterministic_and_readable() {
        let ctx = Ctx::symbolic();
        let p = NCPoly::from_symbol(phi(0, "u"))
            .mul(&NCPoly::from_symbol(phi(1, "v")), &ctx)
            .add(&NCPoly::one());
        let dump = format!("{p}");
        assert!(dump.contains("Phi[+](u)·Phi[-](v)"), "{dump}");
        assert!(dump.contains("(1) 1"), "{dump}");
    }
}
