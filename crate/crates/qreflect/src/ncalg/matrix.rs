//! Dense matrices with noncommutative-polynomial entries on tensor legs of
//! dimension 2.
//!
//! These are the auxiliary-space matrices of the quadratic relations: entries
//! are [`NCPoly`] operator expressions, and matrix multiplication is ordered
//! row-by-column with ordered word concatenation (space ordering fixed).  The
//! *matrix* legs here are auxiliary tensor slots, unrelated to the algebra
//! `leg` tag carried by individual symbols.

use std::fmt;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ncalg::word::NCPoly;
use crate::prefactor::Coeff;
use crate::tensor::{Leg, Mat};

/// Dense matrix of noncommutative polynomials on auxiliary legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCMat {
    legs: Vec<Leg>,
    dim: usize,
    /// Row-major, `entries[row * dim + col]`.
    entries: Vec<NCPoly>,
}

impl NCMat {
    pub fn zero(legs: &[Leg]) -> NCMat {
        let dim = 1usize << legs.len();
        NCMat {
            legs: legs.to_vec(),
            dim,
            entries: vec![NCPoly::zero(); dim * dim],
        }
    }

    pub fn identity(legs: &[Leg]) -> NCMat {
        let mut m = NCMat::zero(legs);
        for i in 0..m.dim {
            m.entries[i * m.dim + i] = NCPoly::one();
        }
        m
    }

    pub fn from_fn(legs: &[Leg], f: impl Fn(usize, usize) -> NCPoly) -> NCMat {
        let mut m = NCMat::zero(legs);
        for r in 0..m.dim {
            for c in 0..m.dim {
                m.entries[r * m.dim + c] = f(r, c);
            }
        }
        m
    }

    /// Lift a scalar-coefficient matrix to an operator matrix (entries become
    /// coefficient multiples of the empty word).
    pub fn lift(m: &Mat) -> NCMat {
        NCMat::from_fn(m.legs(), |r, c| NCPoly::constant(m.get(r, c).clone()))
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &NCPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: NCPoly) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&NCPoly) -> NCPoly) -> NCMat {
        NCMat {
            legs: self.legs.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_legs(&self, other: &NCMat) -> Result<()> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch(format!(
                "operands act on legs {:?} vs {:?}",
                self.legs, other.legs
            )));
        }
        Ok(())
    }

    /// Ordered matrix product: row entries multiply column entries from the
    /// left, so operator words concatenate in matrix-multiplication order.
    pub fn dot(&self, other: &NCMat, ctx: &Ctx) -> NCMat {
        self.check_legs(other).expect("leg-compatible matrices");
        let mut out = NCMat::zero(&self.legs);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = NCPoly::zero();
                for k in 0..self.dim {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b, ctx));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn plus(&self, other: &NCMat) -> NCMat {
        self.check_legs(other).expect("leg-compatible matrices");
        let mut out = self.clone();
        for i in 0..out.entries.len() {
            out.entries[i] = out.entries[i].add(&other.entries[i]);
        }
        out
    }

    pub fn minus(&self, other: &NCMat) -> NCMat {
        self.plus(&other.neg())
    }

    pub fn neg(&self) -> NCMat {
        self.map(NCPoly::neg)
    }

    pub fn scale(&self, c: &Coeff, ctx: &Ctx) -> NCMat {
        self.map(|p| p.scale(c, ctx))
    }

    pub fn transpose(&self) -> NCMat {
        NCMat::from_fn(&self.legs, |r, c| self.get(c, r).clone())
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> NCPoly {
        let mut acc = NCPoly::zero();
        for i in 0..self.dim {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn nonzero_entries(&self) -> Vec<((usize, usize), NCPoly)> {
        let mut out = Vec::new();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let e = self.get(r, c);
                if !e.is_zero() {
                    out.push(((r, c), e.clone()));
                }
            }
        }
        out
    }
}

/// Embed `m` (acting on `target_legs`) into the identity on `all_legs`.
pub fn ncmat_embed(m: &NCMat, target_legs: &[Leg], all_legs: &[Leg]) -> Result<NCMat> {
    if m.legs.len() != target_legs.len() {
        return Err(Error::LegMismatch(format!(
            "matrix has {} legs but target names {}",
            m.legs.len(),
            target_legs.len()
        )));
    }
    let mut positions = Vec::with_capacity(target_legs.len());
    for t in target_legs {
        match all_legs.iter().position(|l| l == t) {
            Some(p) => positions.push(p),
            None => {
                return Err(Error::LegMismatch(format!(
                    "target leg {} not among {:?}",
                    t, all_legs
                )))
            }
        }
    }
    let n = all_legs.len();
    let sub = |index: usize| -> usize {
        let mut s = 0usize;
        for &p in &positions {
            s = (s << 1) | ((index >> (n - 1 - p)) & 1);
        }
        s
    };
    let spectator = |index: usize| -> usize {
        let mut s = 0usize;
        for p in 0..n {
            if !positions.contains(&p) {
                s = (s << 1) | ((index >> (n - 1 - p)) & 1);
            }
        }
        s
    };
    Ok(NCMat::from_fn(all_legs, |r, c| {
        if spectator(r) != spectator(c) {
            NCPoly::zero()
        } else {
            m.get(sub(r), sub(c)).clone()
        }
    }))
}

/// Partial transpose on one leg (transposes that leg's digit pair only).
pub fn ncmat_partial_transpose(m: &NCMat, leg: Leg) -> Result<NCMat> {
    let pos = m
        .legs
        .iter()
        .position(|l| *l == leg)
        .ok_or_else(|| Error::LegMismatch(format!("leg {leg} not among {:?}", m.legs)))?;
    let n = m.legs.len();
    let shift = n - 1 - pos;
    let swap_digit = |row: usize, col: usize| -> (usize, usize) {
        let rd = (row >> shift) & 1;
        let cd = (col >> shift) & 1;
        let r = (row & !(1 << shift)) | (cd << shift);
        let c = (col & !(1 << shift)) | (rd << shift);
        (r, c)
    };
    Ok(NCMat::from_fn(&m.legs, |r, c| {
        let (sr, sc) = swap_digit(r, c);
        m.get(sr, sc).clone()
    }))
}

impl fmt::Display for NCMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            for c in 0..self.dim {
                let e = self.get(r, c);
                if !e.is_zero() {
                    writeln!(f, "[{r},{c}] {e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Monomial;
    use crate::ncalg::word::{Family, GenSymbol};

    fn sym(family: Family, i: u8, j: u8, arg: &str) -> NCPoly {
        NCPoly::from_symbol(GenSymbol::new(family, [i, j], 0, Monomial::var(arg)))
    }

    fn symbol_matrix(family: Family, arg: &str, leg: Leg) -> NCMat {
        NCMat::from_fn(&[leg], |r, c| sym(family, r as u8, c as u8, arg))
    }

    #[test]
    fn ordered_product_concatenates_words() {
        let ctx = Ctx::symbolic();
        let a = symbol_matrix(Family::Lp, "u", 1);
        let b = symbol_matrix(Family::Lm, "v", 1);
        let prod = a.dot(&b, &ctx);
        // (0,0) entry: Lp[1,1](u)Lm[1,1](v) + Lp[1,2](u)Lm[2,1](v).
        let e = prod.get(0, 0);
        assert_eq!(e.num_terms(), 2);
        for (word, _) in e.terms() {
            assert_eq!(word.symbols()[0].family, Family::Lp);
            assert_eq!(word.symbols()[1].family, Family::Lm);
        }
    }

    #[test]
    fn embedding_multiplicative_on_distinct_slots() {
        let ctx = Ctx::symbolic();
        let a = symbol_matrix(Family::Lp, "u", 1);
        let b = symbol_matrix(Family::Lm, "v", 2);
        let a12 = ncmat_embed(&a, &[1], &[1, 2]).unwrap();
        let b12 = ncmat_embed(&b, &[2], &[1, 2]).unwrap();
        let prod = a12.dot(&b12, &ctx);
        // Entry ((0,0),(1,1)) = Lp[1,2](u)·Lm[1,2](v).
        let e = prod.get(0b00, 0b11);
        assert_eq!(e.num_terms(), 1);
        let (word, _) = e.terms().next().unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(word.symbols()[0].indices, [0, 1]);
        assert_eq!(word.symbols()[1].indices, [0, 1]);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let m = NCMat::from_fn(&[1, 2], |r, c| {
            if (r + 2 * c) % 3 == 0 {
                sym(Family::Kpp, (r % 2) as u8, (c % 2) as u8, "u")
            } else {
                NCPoly::zero()
            }
        });
        let t1 = ncmat_partial_transpose(&m, 1).unwrap();
        let back = ncmat_partial_transpose(&t1, 1).unwrap();
        assert_eq!(m, back);
        assert_ne!(m, t1);
    }

    #[test]
    fn trace_sums_diagonal() {
        let m = symbol_matrix(Family::K0, "u", 1);
        let tr = m.trace();
        assert_eq!(tr.num_terms(), 2);
    }
}
