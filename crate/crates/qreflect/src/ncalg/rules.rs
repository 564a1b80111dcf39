//! Exchange-rule derivation from quadratic relations.
//!
//! Every algebra in the engine presents its defining relations in one of two
//! quadratic shapes:
//!
//! * **vector exchange** — `Φ₂(v)·Φ₁(u) = R̄₁₂(u/v)·Φ₁(u)·Φ₂(v)`: the
//!   wrong-order product rewrites directly through the 4×4 coefficient
//!   matrix;
//! * **sandwich** — `A·X₁(u)·B·Y₂(v) = Y₂(v)·C·X₁(u)·D` with scalar 4×4
//!   factors A, B, C, D (each an R-matrix kernel with a formal prefactor, or
//!   absent).  Because the factors are scalars they commute with all operator
//!   entries, so collecting coefficients of the 16 words `X_{ij}(u)Y_{kl}(v)`
//!   on the left and the 16 words `Y_{kl}(v)X_{ij}(u)` on the right turns the
//!   relation into a 16×16 linear system `D·w_XY = C·w_YX`.  When C is
//!   nonsingular as a rational-function matrix, the exchange rule is the
//!   exact solution `w_YX = C⁻¹D·w_XY`, with the formal prefactors of both
//!   sides contributing one overall reduced ratio.
//!
//! Rules are derived lazily and cached by (families, argument pair) in a
//! [`RuleBook`].  The book is configured with one relation generator per
//! ordered family pair; generators receive the concrete argument monomials,
//! so a single generator serves every argument combination that arises
//! during rewriting.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::field::{Monomial, Scalar};
use crate::ncalg::matrix::{ncmat_embed, NCMat};
use crate::ncalg::word::{Family, GenSymbol, NCPoly};
use crate::prefactor::{pf_mul, Coeff, PrefactorElement};
use crate::rmatrix::{build_r_bar, build_r_tilde};
use crate::tensor::{Leg, Mat};

/// One scalar sandwich factor: a 4×4 kernel on auxiliary legs [1, 2] plus its
/// formal prefactor decoration.
#[derive(Clone, Debug)]
pub struct DecoratedFactor {
    pub kernel: Mat,
    pub prefactor: PrefactorElement,
}

impl DecoratedFactor {
    /// `R̃(x) = r(x)·R(x)` on auxiliary legs [1, 2].
    pub fn tilde(x: &Monomial) -> DecoratedFactor {
        let d = build_r_tilde(x, [1, 2]);
        DecoratedFactor {
            kernel: d.kernel.matrix,
            prefactor: d.symbol,
        }
    }

    /// `R̄(x) = f(x)·R(x)` on auxiliary legs [1, 2].
    pub fn bar(x: &Monomial) -> DecoratedFactor {
        let d = build_r_bar(x, [1, 2]);
        DecoratedFactor {
            kernel: d.kernel.matrix,
            prefactor: d.symbol,
        }
    }
}

/// Quadratic sandwich relation `A·X₁(u)·B·Y₂(v) = Y₂(v)·C·X₁(u)·D`.
/// `None` factors are identities.
#[derive(Clone, Debug, Default)]
pub struct SandwichRelation {
    pub a: Option<DecoratedFactor>,
    pub b: Option<DecoratedFactor>,
    pub c: Option<DecoratedFactor>,
    pub d: Option<DecoratedFactor>,
}

/// A relation instance for one ordered family pair at concrete arguments.
#[derive(Clone, Debug)]
pub enum PairRelation {
    /// Vector exchange through the given 4×4 factor.
    Fz(DecoratedFactor),
    Sandwich(SandwichRelation),
}

/// Produces the relation governing `X(u)…Y(v)` for the registered family
/// pair; called with `u` = the argument of the symbol that ends up left in
/// normal order (the redex's *right* symbol) and `v` = the other argument.
pub type RelationGen = Box<dyn Fn(&Monomial, &Monomial) -> Result<PairRelation>>;

/// Cache key: the redex as written (left symbol first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RuleKey {
    pub left_family: Family,
    pub left_arg: Monomial,
    pub right_family: Family,
    pub right_arg: Monomial,
}

impl fmt::Display for RuleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}) · {}({})",
            self.left_family.name(),
            self.left_arg,
            self.right_family.name(),
            self.right_arg
        )
    }
}

/// A derived rewrite rule: for the redex `F_l[i](la)·F_r[j](ra)` the entry
/// `terms[(i, j)]` lists the normal-ordered replacement
/// `Σ coeff · F_r[a](ra) · F_l[b](la)`.
#[derive(Clone, Debug)]
pub struct ExchangeRule {
    left_family: Family,
    left_arg: Monomial,
    right_family: Family,
    right_arg: Monomial,
    terms: BTreeMap<(usize, usize), Vec<(Coeff, [u8; 2], [u8; 2])>>,
}

impl ExchangeRule {
    /// Rewrite one redex.  The replacement symbols inherit the redex's leg.
    pub fn apply(&self, left: &GenSymbol, right: &GenSymbol) -> Vec<(Coeff, GenSymbol, GenSymbol)> {
        debug_assert_eq!(left.family, self.left_family);
        debug_assert_eq!(right.family, self.right_family);
        debug_assert_eq!(left.arg, self.left_arg);
        debug_assert_eq!(right.arg, self.right_arg);
        let li = left.family.component_index(left.indices);
        let ri = right.family.component_index(right.indices);
        match self.terms.get(&(li, ri)) {
            None => Vec::new(),
            Some(list) => list
                .iter()
                .map(|(c, a, b)| {
                    (
                        c.clone(),
                        GenSymbol::new(self.right_family, *a, left.leg, self.right_arg.clone()),
                        GenSymbol::new(self.left_family, *b, left.leg, self.left_arg.clone()),
                    )
                })
                .collect(),
        }
    }

    /// Number of (redex component) entries with a nonempty replacement.
    pub fn num_entries(&self) -> usize {
        self.terms.len()
    }

    /// The full replacement matrix: rows index the redex components as
    /// `left_index · right_count + right_index`, columns the replacement
    /// components as `new_right_index · left_count + new_left_index`.
    pub fn dense(&self) -> Vec<Vec<Coeff>> {
        let lc = self.left_family.component_count();
        let rc = self.right_family.component_count();
        let dim = lc * rc;
        let mut m = vec![vec![Coeff::zero(); dim]; dim];
        for ((li, ri), list) in &self.terms {
            for (coeff, a, b) in list {
                let col = self.right_family.component_index(*a) * lc
                    + self.left_family.component_index(*b);
                m[li * rc + ri][col] = coeff.clone();
            }
        }
        m
    }

    pub fn rows(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize), &Vec<(Coeff, [u8; 2], [u8; 2])>)> {
        self.terms.iter()
    }
}

/// 2×2 matrix of atomic symbols of `family` at `arg` on one auxiliary leg.
pub(crate) fn symbol_matrix(family: Family, arg: &Monomial, aux: Leg) -> NCMat {
    NCMat::from_fn(&[aux], |r, c| {
        NCPoly::from_symbol(GenSymbol::new(family, [r as u8, c as u8], 0, arg.clone()))
    })
}

fn factor_prefactor(f: &Option<DecoratedFactor>) -> PrefactorElement {
    f.as_ref()
        .map(|d| d.prefactor.clone())
        .unwrap_or_else(PrefactorElement::one)
}

fn lift_factor(f: &Option<DecoratedFactor>, legs: &[Leg]) -> NCMat {
    match f {
        Some(d) => NCMat::lift(&d.kernel),
        None => NCMat::identity(legs),
    }
}

/// Derive the vector exchange rule `Φ_j(la)·Φ_i(ra) →
/// Σ pf·R_{(i j),(i' j')} Φ_{i'}(ra)·Φ_{j'}(la)` from a decorated factor
/// evaluated at `ra/la`.
fn derive_fz_rule(factor: &DecoratedFactor, key: &RuleKey, ctx: &Ctx) -> ExchangeRule {
    let pf = Coeff::from_prefactor(&factor.prefactor);
    let mut terms = BTreeMap::new();
    for li in 0..2usize {
        for ri in 0..2usize {
            let row = 2 * ri + li;
            let mut list = Vec::new();
            for col in 0..4usize {
                let entry = factor
                    .kernel
                    .get(row, col)
                    .as_scalar()
                    .expect("exchange kernels are pure scalars");
                if entry.is_zero() {
                    continue;
                }
                let coeff = pf.scale(&entry, ctx);
                let i2 = (col / 2) as u8;
                let j2 = (col % 2) as u8;
                list.push((coeff, [i2, 0], [j2, 0]));
            }
            if !list.is_empty() {
                terms.insert((li, ri), list);
            }
        }
    }
    ExchangeRule {
        left_family: key.left_family,
        left_arg: key.left_arg.clone(),
        right_family: key.right_family,
        right_arg: key.right_arg.clone(),
        terms,
    }
}

/// Exact dense solve `C·T = D` by Gauss–Jordan elimination over the scalar
/// fraction field; errors if C is singular as a rational-function matrix.
fn solve_dense(cmat: &[Vec<Scalar>], dmat: &[Vec<Scalar>], what: &str) -> Result<Vec<Vec<Scalar>>> {
    let n = cmat.len();
    let m = dmat[0].len();
    let mut aug: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row = cmat[i].clone();
            row.extend(dmat[i].iter().cloned());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or_else(|| {
            Error::SingularCoefficientMatrix(format!(
                "{what}: column {col} has no usable pivot (determinant vanishes identically)"
            ))
        })?;
        aug.swap(col, pivot);
        let inv_pivot = Scalar::one()
            .div(&aug[col][col])
            .expect("pivot is nonzero");
        for j in col..n + m {
            aug[col][j] = aug[col][j].mul(&inv_pivot);
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for j in col..n + m {
                let delta = factor.mul(&aug[col][j]);
                aug[r][j] = aug[r][j].sub(&delta);
            }
        }
    }
    Ok(aug.into_iter().map(|mut row| row.split_off(n)).collect())
}

/// Derive the sandwich exchange rule for the redex described by `key` from
/// the relation `A·X₁(u)·B·Y₂(v) = Y₂(v)·C·X₁(u)·D`, where X is the redex's
/// right family at `u = key.right_arg` and Y the left family at
/// `v = key.left_arg`.
fn derive_sandwich_rule(
    rel: &SandwichRelation,
    key: &RuleKey,
    ctx: &Ctx,
) -> Result<ExchangeRule> {
    let legs = [1u8, 2];
    let xf = key.right_family;
    let yf = key.left_family;
    debug_assert_eq!(xf.arity(), 2, "sandwich relations govern matrix families");
    debug_assert_eq!(yf.arity(), 2, "sandwich relations govern matrix families");
    let x1 = ncmat_embed(&symbol_matrix(xf, &key.right_arg, 1), &[1], &legs)
        .expect("embedding X on leg 1");
    let y2 = ncmat_embed(&symbol_matrix(yf, &key.left_arg, 2), &[2], &legs)
        .expect("embedding Y on leg 2");

    let lhs = lift_factor(&rel.a, &legs)
        .dot(&x1, ctx)
        .dot(&lift_factor(&rel.b, &legs), ctx)
        .dot(&y2, ctx);

    // Collect the word coefficients of the left side: entry (r, c) of the
    // 4×4 product holds X(u)Y(v) words indexed X-major.
    let mut dmat = vec![vec![Scalar::zero(); 16]; 16];
    for r in 0..4usize {
        for c in 0..4usize {
            let row = 4 * r + c;
            for (word, coeff) in lhs.get(r, c).terms() {
                let syms = word.symbols();
                debug_assert_eq!(syms.len(), 2);
                let (xs, ys) = orient(syms, xf, &key.right_arg);
                let xi = xf.component_index(syms[xs].indices);
                let yi = yf.component_index(syms[ys].indices);
                dmat[row][4 * xi + yi] = coeff
                    .as_scalar()
                    .expect("sandwich factors are pure scalars");
            }
        }
    }

    // Solving the full 16×16 system entry-by-entry is wasteful: the right
    // side Y₂·C·X₁·D decouples.  Multiplying by D⁻¹ leaves Y₂·C·X₁, whose
    // entry ((r1,r2),(c1,c2)) is Σ_{m,n} Y_{r2,m}·C[(r1,m),(n,c2)]·X_{n,c1}.
    // For fixed (r2, c1) this is a 4-unknown linear system in the products
    // Y_{r2,m}X_{n,c1}, and the 4×4 coefficient matrix
    // Ĉ[(r1,c2)][(m,n)] = C[(r1,m),(n,c2)] is shared by every block.
    let what = format!("rule for {key}");
    let kernel_grid = |f: &Option<DecoratedFactor>| -> Vec<Vec<Scalar>> {
        (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| match f {
                        Some(d) => d
                            .kernel
                            .get(r, c)
                            .as_scalar()
                            .expect("sandwich factors are pure scalars"),
                        None if r == c => Scalar::one(),
                        None => Scalar::zero(),
                    })
                    .collect()
            })
            .collect()
    };
    let id4: Vec<Vec<Scalar>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|c| if r == c { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    let dinv = solve_dense(&kernel_grid(&rel.d), &id4, &what)?;
    let ck = kernel_grid(&rel.c);
    let mut chat = vec![vec![Scalar::zero(); 4]; 4];
    for r1 in 0..2usize {
        for c2 in 0..2usize {
            for m in 0..2usize {
                for n in 0..2usize {
                    chat[2 * r1 + c2][2 * m + n] = ck[2 * r1 + m][2 * n + c2].clone();
                }
            }
        }
    }
    let chat_inv = solve_dense(&chat, &id4, &what)?;

    // E := (A·X₁·B·Y₂)·D⁻¹, acting on the flat entry-column index.
    let mut emat = vec![vec![Scalar::zero(); 16]; 16];
    for r in 0..4usize {
        for c in 0..4usize {
            for (cp, drow) in dinv.iter().enumerate() {
                let d = &drow[c];
                if d.is_zero() {
                    continue;
                }
                for w in 0..16usize {
                    let s = &dmat[4 * r + cp][w];
                    if s.is_zero() {
                        continue;
                    }
                    emat[4 * r + c][w] = emat[4 * r + c][w].add(&s.mul(d));
                }
            }
        }
    }


    // Back-substitute each (r2, c1) block through Ĉ⁻¹.
    let mut t = vec![vec![Scalar::zero(); 16]; 16];
    for a in 0..2usize {
        for f in 0..2usize {
            for m in 0..2usize {
                for n in 0..2usize {
                    let trow = 4 * (2 * a + m) + (2 * n + f);
                    for r1 in 0..2usize {
                        for c2 in 0..2usize {
                            let coefficient = &chat_inv[2 * m + n][2 * r1 + c2];
                            if coefficient.is_zero() {
                                continue;
                            }
                            let erow = 4 * (2 * r1 + a) + (2 * f + c2);
                            for w in 0..16usize {
                                let s = &emat[erow][w];
                                if s.is_zero() {
                                    continue;
                                }
                                t[trow][w] = t[trow][w].add(&s.mul(coefficient));
                            }
                        }
                    }
                }
            }
        }
    }


    let pf_l = pf_mul(&factor_prefactor(&rel.a), &factor_prefactor(&rel.b));
    let pf_r = pf_mul(&factor_prefactor(&rel.c), &factor_prefactor(&rel.d));
    let ratio = Coeff::from_prefactor(&pf_mul(&pf_l, &pf_r.inv()));

    let mut terms = BTreeMap::new();
    for yi in 0..4usize {
        for xi in 0..4usize {
            let row = 4 * yi + xi;
            let mut list = Vec::new();
            for col in 0..16usize {
                let s = &t[row][col];
                if s.is_zero() {
                    continue;
                }
                let coeff = ratio.scale(s, ctx);
                let a = xf.component_from_index(col / 4);
                let b = yf.component_from_index(col % 4);
                list.push((coeff, a, b));
            }
            if !list.is_empty() {
                terms.insert((yi, xi), list);
            }
        }
    }
    Ok(ExchangeRule {
        left_family: key.left_family,
        left_arg: key.left_arg.clone(),
        right_family: key.right_family,
        right_arg: key.right_arg.clone(),
        terms,
    })
}

/// Identify which of the two symbols is the X factor (family `xf` at
/// `x_arg`); returns (x position, y position).
fn orient(syms: &[GenSymbol], xf: Family, x_arg: &Monomial) -> (usize, usize) {
    if syms[0].family == xf && syms[0].arg == *x_arg {
        (0, 1)
    } else {
        (1, 0)
    }
}

/// Derive the exchange rule for `key` directly from an explicit relation,
/// bypassing any rule book.  This is how callers inspect the rewrite a
/// relation induces without registering a generator.
pub fn derive_exchange_rule(rel: &PairRelation, key: &RuleKey, ctx: &Ctx) -> Result<ExchangeRule> {
    match rel {
        PairRelation::Fz(factor) => Ok(derive_fz_rule(factor, key, ctx)),
        PairRelation::Sandwich(s) => derive_sandwich_rule(s, key, ctx),
    }
}

/// Lazily derived, cached exchange rules for every registered family pair.
pub struct RuleBook {
    gens: BTreeMap<(Family, Family), RelationGen>,
    cache: RefCell<BTreeMap<RuleKey, Rc<ExchangeRule>>>,
}

impl Default for RuleBook {
    fn default() -> Self {
        RuleBook::new()
    }
}

impl RuleBook {
    pub fn new() -> RuleBook {
        RuleBook {
            gens: BTreeMap::new(),
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    /// Register the relation generator for redexes `left_family · right_family`.
    pub fn register(&mut self, left: Family, right: Family, gen: RelationGen) {
        self.gens.insert((left, right), gen);
    }

    pub fn covers(&self, left: Family, right: Family) -> bool {
        self.gens.contains_key(&(left, right))
    }

    /// Fetch (deriving and caching on first use) the rule for a redex.
    pub fn rule(&self, key: &RuleKey, ctx: &Ctx) -> Result<Rc<ExchangeRule>> {
        if let Some(hit) = self.cache.borrow().get(key) {
            return Ok(hit.clone());
        }
        let gen = self
            .gens
            .get(&(key.left_family, key.right_family))
            .ok_or_else(|| Error::MissingRule(key.to_string()))?;
        let relation = gen(&key.right_arg, &key.left_arg)?;
        let rule = match &relation {
            PairRelation::Fz(factor) => derive_fz_rule(factor, key, ctx),
            PairRelation::Sandwich(rel) => derive_sandwich_rule(rel, key, ctx)?,
        };
        let rc = Rc::new(rule);
        self.cache.borrow_mut().insert(key.clone(), rc.clone());
        Ok(rc)
    }
}

/// The Φ–Φ exchange generator: `Φ₂(v)Φ₁(u) = R̄₁₂(u/v)Φ₁(u)Φ₂(v)`.
pub fn fz_generator() -> RelationGen {
    Box::new(|u, v| Ok(PairRelation::Fz(DecoratedFactor::bar(&u.div(v)))))
}

/// Φ–Φ exchange with an injectable kernel builder (prefactor stays `f`);
/// exists so mutation tests can corrupt the kernel.
pub fn fz_generator_with(kernel: impl Fn(&Monomial) -> Mat + 'static) -> RelationGen {
    Box::new(move |u, v| {
        let x = u.div(v);
        Ok(PairRelation::Fz(DecoratedFactor {
            kernel: kernel(&x),
            prefactor: PrefactorElement::f_symbol(&x, 1),
        }))
    })
}

/// A rule book holding only the Φ–Φ exchange.
pub fn fz_rulebook() -> RuleBook {
    let mut book = RuleBook::new();
    book.register(Family::Phi, Family::Phi, fz_generator());
    book
}

/// Argument expression for one sandwich factor, as a function of
/// (u, v) = (right/normal-first argument, left argument).
pub type ArgFn = Box<dyn Fn(&Monomial, &Monomial) -> Monomial>;

/// Generic sandwich generator with all factors tilded R-matrices at the
/// given argument expressions (`None` = identity factor).
pub fn sandwich_generator(
    a: Option<ArgFn>,
    b: Option<ArgFn>,
    c: Option<ArgFn>,
    d: Option<ArgFn>,
) -> RelationGen {
    Box::new(move |u, v| {
        let build = |f: &Option<ArgFn>| f.as_ref().map(|g| DecoratedFactor::tilde(&g(u, v)));
        Ok(PairRelation::Sandwich(SandwichRelation {
            a: build(&a),
            b: build(&b),
            c: build(&c),
            d: build(&d),
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::word::Word;
    use crate::prefactor::PfSymbols;
    use crate::rmatrix::{kernel_b, kernel_c};

    fn ctx() -> Ctx {
        Ctx::symbolic()
    }

    fn phi(sign: u8, arg: &Monomial) -> GenSymbol {
        GenSymbol::new(Family::Phi, [sign, 0], 0, arg.clone())
    }

    #[test]
    fn fz_like_component_rule_is_single_term() {
        let book = fz_rulebook();
        let u = Monomial::var("u");
        let v = Monomial::var("v");
        let key = RuleKey {
            left_family: Family::Phi,
            left_arg: v.clone(),
            right_family: Family::Phi,
            right_arg: u.clone(),
        };
        let rule = book.rule(&key, &ctx()).unwrap();
        let terms = rule.apply(&phi(0, &v), &phi(0, &u));
        assert_eq!(terms.len(), 1);
        let (coeff, a, b) = &terms[0];
        assert_eq!(a.arg, u);
        assert_eq!(b.arg, v);
        assert_eq!(a.indices, [0, 0]);
        assert_eq!(b.indices, [0, 0]);
        // Coefficient is the bare prefactor class f(u/v) with scalar 1.
        assert_eq!(coeff.num_classes(), 1);
        let (symbols, scalar) = coeff.classes().next().unwrap();
        assert!(!symbols.is_empty());
        assert!(scalar.is_one());
    }

    #[test]
    fn fz_mixed_component_rule_has_b_and_c_parts() {
        let book = fz_rulebook();
        let u = Monomial::var("u");
        let v = Monomial::var("v");
        let key = RuleKey {
            left_family: Family::Phi,
            left_arg: v.clone(),
            right_family: Family::Phi,
            right_arg: u.clone(),
        };
        let rule = book.rule(&key, &ctx()).unwrap();
        // Φ₋(v)Φ₊(u): row (+,−) of the kernel.
        let terms = rule.apply(&phi(1, &v), &phi(0, &u));
        assert_eq!(terms.len(), 2);
        let x = u.div(&v);
        for (coeff, a, b) in &terms {
            let (_, scalar) = coeff.classes().next().unwrap();
            if a.indices[0] == 0 {
                // Φ₊(u)Φ₋(v) carries b(u/v).
                assert_eq!(b.indices[0], 1);
                assert_eq!(*scalar, kernel_b(&x));
            } else {
                assert_eq!(b.indices[0], 0);
                assert_eq!(*scalar, kernel_c(&x));
            }
        }
    }

    #[test]
    fn rules_are_cached_per_argument_pair() {
        let book = fz_rulebook();
        let key = RuleKey {
            left_family: Family::Phi,
            left_arg: Monomial::var("v"),
            right_family: Family::Phi,
            right_arg: Monomial::var("u"),
        };
        let r1 = book.rule(&key, &ctx()).unwrap();
        let r2 = book.rule(&key, &ctx()).unwrap();
        assert!(Rc::ptr_eq(&r1, &r2));
    }

    #[test]
    fn missing_pair_reports_missing_rule() {
        let book = fz_rulebook();
        let key = RuleKey {
            left_family: Family::Lp,
            left_arg: Monomial::var("v"),
            right_family: Family::Lp,
            right_arg: Monomial::var("u"),
        };
        match book.rule(&key, &ctx()) {
            Err(Error::MissingRule(s)) => assert!(s.contains("Lp"), "{s}"),
            other => panic!("expected MissingRule, got {other:?}"),
        }
    }

    /// Like-sign RLL relation: R̃₁₂(u/v)·X₁(u)·Y₂(v) = Y₂(v)·X₁(u)·R̃₁₂(u/v).
    fn like_sign_book() -> RuleBook {
        let mut book = RuleBook::new();
        book.register(
            Family::Lp,
            Family::Lp,
            sandwich_generator(
                Some(Box::new(|u, v| u.div(v))),
                None,
                None,
                Some(Box::new(|u, v| u.div(v))),
            ),
        );
        book
    }

    #[test]
    fn like_sign_rule_is_prefactor_free() {
        let book = like_sign_book();
        let key = RuleKey {
            left_family: Family::Lp,
            left_arg: Monomial::var("v"),
            right_family: Family::Lp,
            right_arg: Monomial::var("u"),
        };
        let rule = book.rule(&key, &ctx()).unwrap();
        for (_, list) in rule.rows() {
            for (coeff, _, _) in list {
                for (symbols, _) in coeff.classes() {
                    assert!(
                        symbols.is_empty(),
                        "like-sign rules must not carry prefactor classes"
                    );
                }
            }
        }
    }

    #[test]
    fn derived_rule_satisfies_originating_relation() {
        // Substitute the rule back: rewrite every Y·X word of the RHS and
        // compare against the LHS, entry by entry.
        let c = ctx();
        let u = Monomial::var("u");
        let v = Monomial::var("v");
        let key = RuleKey {
            left_family: Family::Lp,
            left_arg: v.clone(),
            right_family: Family::Lp,
            right_arg: u.clone(),
        };
        let book = like_sign_book();
        let rule = book.rule(&key, &c).unwrap();

        let legs = [1u8, 2];
        let factor = DecoratedFactor::tilde(&u.div(&v));
        let x1 = ncmat_embed(&symbol_matrix(Family::Lp, &u, 1), &[1], &legs).unwrap();
        let y2 = ncmat_embed(&symbol_matrix(Family::Lp, &v, 2), &[2], &legs).unwrap();
        let lhs = NCMat::lift(&factor.kernel).dot(&x1, &c).dot(&y2, &c);
        let rhs = y2.dot(&x1, &c).dot(&NCMat::lift(&factor.kernel), &c);

        for r in 0..4 {
            for col in 0..4 {
                let mut rewritten = NCPoly::zero();
                for (word, coeff) in rhs.get(r, col).terms() {
                    let syms = word.symbols();
                    for (rc, a, b) in rule.apply(&syms[0], &syms[1]) {
                        rewritten.add_term(
                            Word::from_symbols(vec![a, b]),
                            coeff.mul(&rc, &c),
                        );
                    }
                }
                let diff = rewritten.sub(lhs.get(r, col));
                assert!(diff.is_zero(), "entry ({r},{col}) residual: {diff}");
            }
        }
    }

    #[test]
    fn mixed_argument_rule_carries_reduced_prefactor_ratio() {
        // A = R̃(γ²u/v), D = R̃(γ⁻²u/v): the ratio r(γ²u/v)/r(γ⁻²u/v) is not
        // a q-power shift, so the rule coefficients carry a two-symbol class.
        let mut book = RuleBook::new();
        let g2 = Monomial::var_pow("gamma", 2);
        let g2c = g2.clone();
        book.register(
            Family::Lm,
            Family::Lp,
            sandwich_generator(
                Some(Box::new(move |u, v| u.div(v).mul(&g2))),
                None,
                None,
                Some(Box::new(move |u, v| u.div(v).div(&g2c))),
            ),
        );
        let key = RuleKey {
            left_family: Family::Lm,
            left_arg: Monomial::var("v"),
            right_family: Family::Lp,
            right_arg: Monomial::var("u"),
        };
        let rule = book.rule(&key, &ctx()).unwrap();
        let mut saw_two_symbol_class = false;
        for (_, list) in rule.rows() {
            for (coeff, _, _) in list {
                for (symbols, _) in coeff.classes() {
                    if !symbols.is_empty() {
                        saw_two_symbol_class = true;
                        assert_ne!(*symbols, PfSymbols::empty());
                    }
                }
            }
        }
        assert!(saw_two_symbol_class, "expected an irreducible prefactor ratio");
    }

    #[test]
    fn singular_coefficient_matrix_is_reported() {
        let mut book = RuleBook::new();
        book.register(
            Family::Lp,
            Family::Lp,
            Box::new(|_, _| {
                Ok(PairRelation::Sandwich(SandwichRelation {
                    a: None,
                    b: None,
                    c: Some(DecoratedFactor {
                        kernel: Mat::zero(&[1, 2]),
                        prefactor: PrefactorElement::one(),
                    }),
                    d: None,
                }))
            }),
        );
        let key = RuleKey {
            left_family: Family::Lp,
            left_arg: Monomial::var("v"),
            right_family: Family::Lp,
            right_arg: Monomial::var("u"),
        };
        match book.rule(&key, &ctx()) {
            Err(Error::SingularCoefficientMatrix(s)) => {
                assert!(s.contains("pivot"), "{s}")
            }
            other => panic!("expected SingularCoefficientMatrix, got {other:?}"),
        }
    }
}
