//! Normal ordering of operator polynomials by exchange-rule rewriting.
//!
//! A word is in **normal order** when, reading left to right along each leg,
//! the sort key (argument descending, family ascending) never decreases: the
//! largest spectral argument stands leftmost, and adjacent symbols with equal
//! arguments are ordered by family with no same-family repetition to resolve.
//! A **redex** is an adjacent same-leg pair violating that order.  Rewriting
//! replaces one redex through the [`RuleBook`]'s derived exchange rule; every
//! replacement word has the same length and exactly one fewer inversion, and
//! δ-contraction (`Σ_k L_{ik}(u)·L⁻¹_{kj}(u) = δ_ij`) strictly shortens
//! words, so the combined system terminates (multiset order on per-term
//! (length, inversion-count) pairs).
//!
//! Contraction only fires on *complete* summed pairs with equal coefficients:
//! recognizing `Σ_k` requires both `k = 0, 1` members to be present with the
//! same coefficient and the same surrounding context.  Partial sums are left
//! alone — they are not equal to anything shorter.

use std::collections::{BTreeMap, BTreeSet};

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::field::Monomial;
use crate::ncalg::rules::{fz_generator_with, fz_rulebook, RuleBook, RuleKey};
use crate::ncalg::word::{Family, GenSymbol, NCPoly, Word};
use crate::report::{bool_check, Report};

/// Which redex of a term gets rewritten first.  Confluent rule systems make
/// the choice irrelevant; [`check_confluence`] verifies exactly that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Step budget for a rewrite run: `QREFLECT_MAX_STEPS` when set and parseable,
/// one million otherwise.
pub fn default_max_steps() -> u64 {
    max_steps_from(std::env::var("QREFLECT_MAX_STEPS").ok().as_deref())
}

fn max_steps_from(raw: Option<&str>) -> u64 {
    raw.and_then(|s| s.trim().parse().ok()).unwrap_or(1_000_000)
}

/// Adjacent same-leg pair in the wrong order: strictly ascending argument,
/// or equal arguments with strictly descending family.  Equal-argument
/// same-family pairs are never redexes (their exchange factor would sit on
/// the singular locus of the R-matrix).
fn is_redex(l: &GenSymbol, r: &GenSymbol) -> bool {
    if l.leg != r.leg {
        return false;
    }
    match l.arg.cmp(&r.arg) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => l.family > r.family,
        std::cmp::Ordering::Greater => false,
    }
}

fn redex_position(word: &Word, strategy: Strategy) -> Option<usize> {
    let syms = word.symbols();
    if syms.len() < 2 {
        return None;
    }
    let candidates = 0..syms.len() - 1;
    match strategy {
        Strategy::Leftmost => candidates.into_iter().find(|&i| is_redex(&syms[i], &syms[i + 1])),
        Strategy::Rightmost => candidates
            .into_iter()
            .rev()
            .find(|&i| is_redex(&syms[i], &syms[i + 1])),
    }
}

/// True when the word has no redex on any leg.
pub fn is_normal(word: &Word) -> bool {
    redex_position(word, Strategy::Leftmost).is_none()
}

/// Family pairs related by `Σ_k X_{ik}(u)·Y_{kj}(u) = δ_ij` at equal
/// arguments (a generator matrix against its antipode image, either order).
fn is_inverse_pair(l: Family, r: Family) -> bool {
    matches!(
        (l, r),
        (Family::Lp, Family::LpInv)
            | (Family::LpInv, Family::Lp)
            | (Family::Lm, Family::LmInv)
            | (Family::LmInv, Family::Lm)
    )
}

fn contractible_at(l: &GenSymbol, r: &GenSymbol) -> bool {
    l.leg == r.leg
        && l.arg == r.arg
        && is_inverse_pair(l.family, r.family)
        && l.indices[1] == r.indices[0]
}

fn has_contractible_pair(word: &Word) -> bool {
    let syms = word.symbols();
    (0..syms.len().saturating_sub(1)).any(|i| contractible_at(&syms[i], &syms[i + 1]))
}

/// Grouping key for δ-sum recognition: the word with the candidate pair
/// removed, the pair's position, family pair, argument, and outer indices.
type ContractionKey = (Word, usize, Family, Family, Monomial, u8, u8);

/// Apply one δ-contraction if any complete summed pair is present.
fn contract_once(poly: &NCPoly) -> Option<NCPoly> {
    let mut groups: BTreeMap<ContractionKey, Vec<(u8, Word, crate::prefactor::Coeff)>> =
        BTreeMap::new();
    for (word, coeff) in poly.terms() {
        let syms = word.symbols();
        for pos in 0..syms.len().saturating_sub(1) {
            let (l, r) = (&syms[pos], &syms[pos + 1]);
            if !contractible_at(l, r) {
                continue;
            }
            let key = (
                word.remove_pair(pos),
                pos,
                l.family,
                r.family,
                l.arg.clone(),
                l.indices[0],
                r.indices[1],
            );
            groups
                .entry(key)
                .or_default()
                .push((l.indices[1], word.clone(), coeff.clone()));
        }
    }
    for ((reduced, _, _, _, _, i, j), members) in groups {
        let m0 = members.iter().find(|(k, _, _)| *k == 0);
        let m1 = members.iter().find(|(k, _, _)| *k == 1);
        if let (Some((_, w0, c0)), Some((_, w1, c1))) = (m0, m1) {
            if c0 == c1 {
                let mut next = poly.clone();
                next.remove_term(w0);
                next.remove_term(w1);
                if i == j {
                    next.add_term(reduced, c0.clone());
                }
                return Some(next);
            }
        }
    }
    None
}

/// δ-contract until no complete summed inverse pair remains.
pub fn contract_fixpoint(mut poly: NCPoly) -> NCPoly {
    while let Some(next) = contract_once(&poly) {
        poly = next;
    }
    poly
}

/// Rewrite `p` to normal order.  Deterministic for a fixed strategy; errors
/// with [`Error::MissingRule`] on an uncovered family pair and
/// [`Error::StepLimitExceeded`] past `max_steps` rewrites.
pub fn normal_order(
    p: &NCPoly,
    rules: &RuleBook,
    ctx: &Ctx,
    strategy: Strategy,
    max_steps: u64,
) -> Result<NCPoly> {
    let mut poly = contract_fixpoint(p.clone());
    let mut pending: BTreeSet<Word> = poly.terms().map(|(w, _)| w.clone()).collect();
    let mut steps: u64 = 0;
    while let Some(word) = pending.pop_first() {
        let Some(coeff) = poly.remove_term(&word) else {
            continue; // cancelled in the meantime
        };
        let Some(pos) = redex_position(&word, strategy) else {
            poly.add_term(word, coeff);
            continue;
        };
        steps += 1;
        if steps > max_steps {
            return Err(Error::StepLimitExceeded(max_steps));
        }
        if steps % 100_000 == 0 {
            eprintln!(
                "normal-order progress: {steps} rewrites, {} terms, {} pending",
                poly.num_terms(),
                pending.len()
            );
        }
        let syms = word.symbols();
        let (l, r) = (&syms[pos], &syms[pos + 1]);
        let key = RuleKey {
            left_family: l.family,
            left_arg: l.arg.clone(),
            right_family: r.family,
            right_arg: r.arg.clone(),
        };
        let rule = rules.rule(&key, ctx)?;
        let mut contraction_hint = false;
        for (rc, a, b) in rule.apply(l, r) {
            let new_word = word.splice_pair(pos, a, b);
            contraction_hint |= has_contractible_pair(&new_word);
            pending.insert(new_word.clone());
            poly.add_term(new_word, coeff.mul(&rc, ctx));
        }
        if contraction_hint {
            poly = contract_fixpoint(poly);
            pending.extend(poly.terms().map(|(w, _)| w.clone()));
        }
    }
    Ok(poly)
}

/// Spectral arguments in strictly descending monomial order.
pub(crate) fn spectral_args(n: usize) -> Vec<Monomial> {
    (0..n)
        .map(|i| match i {
            0 => Monomial::var("u"),
            1 => Monomial::var("v"),
            2 => Monomial::var("w"),
            k => Monomial::var(&format!("x{}", k - 2)),
        })
        .collect()
}

/// Confluence check over an arbitrary rule book: every fully reversed
/// vector word (arguments ascending left to right) over `arg_count` distinct
/// formal arguments, in all `2^arg_count` component patterns, must reach the
/// same normal form under leftmost and rightmost strategies.
pub fn check_confluence_with(
    ctx: &Ctx,
    book: &RuleBook,
    arg_count: usize,
    max_steps: u64,
) -> Report {
    let mut report = Report::new("check-confluence");
    report.set_config("arg-count", arg_count);
    let mut args = spectral_args(arg_count);
    args.reverse(); // ascending left to right: every adjacent pair is a redex
    for bits in 0..(1u32 << arg_count) {
        let symbols: Vec<GenSymbol> = (0..arg_count)
            .map(|pos| {
                let sign = ((bits >> pos) & 1) as u8;
                GenSymbol::new(Family::Phi, [sign, 0], 0, args[pos].clone())
            })
            .collect();
        let word = Word::from_symbols(symbols);
        let name = format!("orders agree on {word}");
        let p = NCPoly::from_word(word.clone(), crate::prefactor::Coeff::one());
        let left = normal_order(&p, book, ctx, Strategy::Leftmost, max_steps);
        let right = normal_order(&p, book, ctx, Strategy::Rightmost, max_steps);
        let check = match (left, right) {
            (Ok(lnf), Ok(rnf)) => {
                let agree = lnf.sub(&rnf).is_zero();
                let all_normal = lnf.terms().all(|(w, _)| is_normal(w));
                let mut notes = vec![format!("{} normal-form term(s)", lnf.num_terms())];
                if !agree {
                    notes.push(format!("non-confluent witness: {word}"));
                }
                if !all_normal {
                    notes.push("leftmost result is not in normal order".to_string());
                }
                bool_check(&name, agree && all_normal, notes)
            }
            (l, r) => {
                let mut notes = Vec::new();
                if let Err(e) = l {
                    notes.push(format!("leftmost: {e}"));
                }
                if let Err(e) = r {
                    notes.push(format!("rightmost: {e}"));
                }
                bool_check(&name, false, notes)
            }
        };
        report.push(check);
    }
    report
}

/// Confluence of the vector exchange rules over `arg_count` formal arguments.
pub fn check_confluence(ctx: &Ctx, arg_count: usize) -> Report {
    check_confluence_with(ctx, &fz_rulebook(), arg_count, default_max_steps())
}

/// A deliberately corrupted vector-exchange book (the kernel's diagonal and
/// antidiagonal middle entries are swapped, breaking the braid consistency):
/// mutation control for [`check_confluence`].
pub fn corrupted_fz_rulebook() -> RuleBook {
    use crate::field::Scalar;
    use crate::rmatrix::{kernel_b, kernel_c};
    use crate::tensor::Mat;
    let mut book = RuleBook::new();
    book.register(
        Family::Phi,
        Family::Phi,
        fz_generator_with(|x| {
            let b = kernel_b(x);
            let c = kernel_c(x);
            Mat::from_scalar_fn(&[1, 2], |row, col| match (row, col) {
                (0, 0) | (3, 3) => Scalar::one(),
                (1, 1) | (2, 2) => c.clone(),
                (1, 2) | (2, 1) => b.clone(),
                _ => Scalar::zero(),
            })
        }),
    );
    book
}
