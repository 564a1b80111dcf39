//! Multivariate polynomial GCD over the Gaussian rationals.
//!
//! Inputs are true polynomials (no negative exponents); the result is monic
//! with respect to the global monomial order.
//!
//! Strategy, fastest first:
//! 1. trivial cases — zero, constants, single terms, no shared variables;
//! 2. univariate inputs — dense monic Euclid;
//! 3. a coprimality filter — evaluate all variables but the main one at
//!    deterministic integers and take a univariate GCD; a degree-zero image
//!    proves the primitive parts coprime, which is the overwhelmingly common
//!    case for the rational functions this engine manipulates;
//! 4. dense evaluation/interpolation (Brown's algorithm): evaluate all
//!    variables except the main one on a rational grid, take univariate
//!    GCDs normalized by the leading-coefficient GCD γ, interpolate back
//!    with multidimensional Newton differences, strip the content, and
//!    *verify by exact trial division* — so unlucky grids can never produce
//!    a wrong answer, only a retry;
//! 5. primitive pseudo-remainder sequences as a correct-by-construction
//!    fallback should every grid attempt fail.

use std::collections::BTreeMap;

use crate::field::gaussian::GaussianRational;
use crate::field::laurent::LaurentPoly;
use crate::field::monomial::{Monomial, Var};

/// GCD of two true polynomials, monic under the global monomial order.
/// `gcd(p, 0) = monic(p)`; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return make_monic(b.clone());
    }
    if b.is_zero() {
        return make_monic(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    if a == b {
        return make_monic(a.clone());
    }
    // single-term inputs: the GCD is the shared monomial part
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return LaurentPoly::from_monomial(monomial_gcd(a, b));
    }

    let vars_a = a.variables();
    let vars_b = b.variables();
    let common: Vec<Var> = vars_a.iter().copied().filter(|v| vars_b.contains(v)).collect();
    if common.is_empty() {
        // any common divisor could only involve shared variables
        return LaurentPoly::one();
    }

    // Exponent contraction: when every exponent of a variable, across both
    // inputs, is a multiple of g ≥ 2, compute the GCD on the x^g → x
    // contracted inputs and expand the result.  Writing a = d·a′, b = d·b′
    // with gcd(a′, b′) = 1, a Bézout identity for (a′, b′) over the fraction
    // field of the other variables substitutes through x → x^g, so the
    // expanded images stay coprime and gcd(a, b) = (contracted gcd)(x^g).
    // Per-variable scaling preserves every lex exponent comparison, hence
    // the monomial order, leading terms, and monicity.  This matters
    // because the engine's rational functions are built from kernels
    // quadratic in the spectral parameters: even exponents are the norm,
    // and halving degrees shrinks the interpolation grids geometrically.
    let scale = contraction_map(a, b);
    if !scale.is_empty() {
        let g = poly_gcd(&scale_exponents(a, &scale, false), &scale_exponents(b, &scale, false));
        return scale_exponents(&g, &scale, true);
    }

    // Both univariate in the same variable: dense monic Euclid (the
    // pseudo-remainder sequence would swell, since constant coefficients
    // have trivial content).
    if vars_a.len() == 1 && vars_b.len() == 1 {
        let v = common[0];
        let empty = BTreeMap::new();
        let ua = a.eval_except(v, &empty).expect("univariate true polynomial");
        let ub = b.eval_except(v, &empty).expect("univariate true polynomial");
        return poly_from_dense(v, &univariate_gcd(ua, ub));
    }

    // main variable: smallest max-degree among the shared variables
    let main = *common
        .iter()
        .min_by_key(|v| {
            let da = a.degree_in(**v).map(|(_, hi)| hi).unwrap_or(0);
            let db = b.degree_in(**v).map(|(_, hi)| hi).unwrap_or(0);
            da.max(db)
        })
        .unwrap();

    let va = a.by_variable(main);
    let vb = b.by_variable(main);

    if let Some(g) = evaluation_filter(a, b, main, &va, &vb) {
        return make_monic(g);
    }

    let ca = content(&va);
    let cb = content(&vb);
    let pa = numeric_normalize(divide_coeffs(&va, &ca));
    let pb = numeric_normalize(divide_coeffs(&vb, &cb));
    let g_cont = poly_gcd(&ca, &cb);
    let g_pp = pp_gcd(&pa, &pb, main);
    make_monic(g_cont.mul(&g_pp))
}

/// Per-variable exponent GCDs across both inputs, keeping only variables
/// contractable by a factor ≥ 2.  Terms where a variable is absent carry
/// exponent 0 there and constrain nothing (gcd(g, 0) = g).
fn contraction_map(a: &LaurentPoly, b: &LaurentPoly) -> BTreeMap<Var, i64> {
    let mut acc: BTreeMap<Var, i64> = BTreeMap::new();
    for (m, _) in a.terms().chain(b.terms()) {
        for (v, e) in m.vars() {
            let g = acc.entry(v).or_insert(0);
            *g = num_integer::gcd(*g, e.abs());
        }
    }
    acc.retain(|_, g| *g >= 2);
    acc
}

/// Divide (`expand = false`) or multiply (`expand = true`) the exponents of
/// the mapped variables by their contraction factors.
fn scale_exponents(p: &LaurentPoly, scale: &BTreeMap<Var, i64>, expand: bool) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let mut nm = Monomial::one();
        for (v, e) in m.vars() {
            let ne = match scale.get(&v) {
                Some(&g) => {
                    if expand {
                        e * g
                    } else {
                        e / g
                    }
                }
                None => e,
            };
            nm = nm.mul(&Monomial::var_pow(v.name(), ne));
        }
        out.add_term(nm, c.clone());
    }
    out
}

/// GCD of a list (used for contents); empty list gives zero.
pub fn poly_gcd_many(polys: &[LaurentPoly]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for p in polys {
        acc = poly_gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// GCD of the primitive parts (both primitive in `main`, at least two
/// variables in play): interpolation first, pseudo-remainders as fallback.
fn pp_gcd(pa: &ByVar, pb: &ByVar, main: Var) -> LaurentPoly {
    if let Some(g) = interp_gcd(pa, pb, main) {
        return g;
    }
    primitive_prs(pa.clone(), pb.clone(), main)
}

fn make_monic(p: LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        None => p,
        Some((_, c)) => {
            if c.is_one() {
                p
            } else {
                let inv = c.inv();
                p.scale(&inv)
            }
        }
    }
}

/// Shared monomial part of two polynomials: per-variable minimum exponents.
fn monomial_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Monomial {
    let ca = a.monomial_content();
    let cb = b.monomial_content();
    let mut g = Monomial::one();
    for (v, ea) in ca.vars() {
        let eb = cb.exponent(v);
        let e = ea.min(eb);
        if e > 0 {
            g = g.mul(&Monomial::var_pow(v.name(), e));
        }
    }
    g
}

type ByVar = BTreeMap<i64, LaurentPoly>;

fn deg(p: &ByVar) -> i64 {
    p.keys().next_back().copied().unwrap_or(-1)
}

fn lc(p: &ByVar) -> LaurentPoly {
    p.values().next_back().cloned().unwrap_or_else(LaurentPoly::zero)
}

fn content(p: &ByVar) -> LaurentPoly {
    let coeffs: Vec<LaurentPoly> = p.values().cloned().collect();
    poly_gcd_many(&coeffs)
}

fn divide_coeffs(p: &ByVar, divisor: &LaurentPoly) -> ByVar {
    if divisor.is_one() {
        return p.clone();
    }
    p.iter().map(|(d, c)| (*d, c.div_exact(divisor))).collect()
}

fn mul_by(p: &ByVar, factor: &LaurentPoly) -> ByVar {
    let mut out = ByVar::new();
    for (d, c) in p {
        let prod = c.mul(factor);
        if !prod.is_zero() {
            out.insert(*d, prod);
        }
    }
    out
}

fn sub_shifted(p: &ByVar, q: &ByVar, shift: i64) -> ByVar {
    let mut out = p.clone();
    for (d, c) in q {
        let key = d + shift;
        let entry = out.entry(key).or_insert_with(LaurentPoly::zero);
        *entry = entry.sub(c);
        if entry.is_zero() {
            out.remove(&key);
        }
    }
    out
}

/// Pseudo-remainder of a by b in the main variable (coefficients are
/// polynomials in the remaining variables). Scaling is absorbed later by
/// taking primitive parts, so the exact pseudo-power is irrelevant.
fn prem(a: &ByVar, b: &ByVar) -> ByVar {
    let db = deg(b);
    let lb = lc(b);
    let mut r = a.clone();
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = lc(&r);
        // r := r*lb - b * lr * x^(dr-db); kills the degree-dr term exactly
        r = sub_shifted(&mul_by(&r, &lb), &mul_by(b, &lr), dr - db);
        debug_assert!(deg(&r) < dr);
    }
    r
}

/// Scale so the numeric leading coefficient of the leading coefficient
/// polynomial is 1. GCDs are only defined up to units, and without this the
/// pseudo-remainder sequence accumulates exponentially growing rationals
/// whenever the polynomial content is trivial.
fn numeric_normalize(p: ByVar) -> ByVar {
    let lead = match lc(&p).leading_term() {
        Some((_, c)) => c.clone(),
        None => return p,
    };
    if lead.is_one() {
        return p;
    }
    let inv = lead.inv();
    p.into_iter().map(|(d, c)| (d, c.scale(&inv))).collect()
}

fn primitive(p: &ByVar) -> ByVar {
    if p.is_empty() {
        return p.clone();
    }
    let c = content(p);
    numeric_normalize(divide_coeffs(p, &c))
}

fn assemble(main: Var, p: &ByVar) -> LaurentPoly {
    LaurentPoly::from_by_variable(main, p)
}

fn primitive_prs(pa: ByVar, pb: ByVar, main: Var) -> LaurentPoly {
    let (mut r0, mut r1) = if deg(&pa) >= deg(&pb) { (pa, pb) } else { (pb, pa) };
    loop {
        if r1.is_empty() {
            return assemble(main, &primitive(&r0));
        }
        if deg(&r1) == 0 {
            // a nonzero x-constant remainder: primitive parts are coprime in x
            return LaurentPoly::one();
        }
        let rem = prem(&r0, &r1);
        r0 = r1;
        r1 = primitive(&rem);
    }
}

/// Rebuild a univariate polynomial from its dense coefficient vector.
fn poly_from_dense(v: Var, dense: &[GaussianRational]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (i, c) in dense.iter().enumerate() {
        if !c.is_zero() {
            p.add_term(Monomial::var_pow(v.name(), i as i64), c.clone());
        }
    }
    p
}

// ---- Evaluation filter ----

/// Deterministic small evaluation values; different retry round, different
/// offsets. Values are chosen > 1 so q-like variables avoid the unit circle.
fn eval_value(var_index: usize, attempt: u32) -> GaussianRational {
    const BASE: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let v = BASE[var_index % BASE.len()] + 43 * attempt as i64 + (var_index / BASE.len()) as i64 * 101;
    GaussianRational::from_int(v)
}

/// Try to prove the primitive parts coprime by a univariate evaluation. On
/// success returns the full GCD (contents only); on failure (nontrivial image
/// or unlucky points) returns None and the caller does real work.
fn evaluation_filter(
    a: &LaurentPoly,
    b: &LaurentPoly,
    main: Var,
    va: &ByVar,
    vb: &ByVar,
) -> Option<LaurentPoly> {
    let mut others: Vec<Var> = Vec::new();
    for v in a.variables().into_iter().chain(b.variables()) {
        if v != main && !others.contains(&v) {
            others.push(v);
        }
    }
    others.sort();

    'attempt: for attempt in 0..3u32 {
        let point: BTreeMap<Var, GaussianRational> = others
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, eval_value(i, attempt)))
            .collect();
        // both leading coefficients must survive the evaluation
        for p in [va, vb] {
            match lc(p).eval(&point) {
                Ok(v) if !v.is_zero() => {}
                _ => continue 'attempt,
            }
        }
        let ua = match a.eval_except(main, &point) {
            Ok(u) => u,
            Err(_) => continue,
        };
        let ub = match b.eval_except(main, &point) {
            Ok(u) => u,
            Err(_) => continue,
        };
        let g = univariate_gcd(ua, ub);
        if g.len() == 1 {
            // primitive parts coprime: only the contents can share factors
            let ca = content(va);
            let cb = content(vb);
            return Some(poly_gcd(&ca, &cb));
        }
        return None;
    }
    None
}

// ---- Dense evaluation/interpolation GCD ----

/// Brown-style GCD of primitive parts by grid evaluation and Newton
/// interpolation.  Every candidate is verified by exact trial division into
/// both inputs, so a None (give up, use the fallback) is the only possible
/// wrong outcome of unlucky grids.
fn interp_gcd(pa: &ByVar, pb: &ByVar, main: Var) -> Option<LaurentPoly> {
    let a = assemble(main, pa);
    let b = assemble(main, pb);

    let mut others: Vec<Var> = Vec::new();
    for v in a.variables().into_iter().chain(b.variables()) {
        if v != main && !others.contains(&v) {
            others.push(v);
        }
    }
    others.sort();
    if others.is_empty() {
        // univariate in main: dense Euclid
        let empty = BTreeMap::new();
        let ua = a.eval_except(main, &empty).ok()?;
        let ub = b.eval_except(main, &empty).ok()?;
        return Some(poly_from_dense(main, &univariate_gcd(ua, ub)));
    }

    // γ = gcd of the two leading coefficients (in the other variables); the
    // interpolated target is H = γ·G/lc(G), a true polynomial since lc(G)
    // divides γ. Per-variable degree bound: deg(H) ≤ deg(γ) + min(deg a, deg b).
    let gamma = poly_gcd(&lc(pa), &lc(pb));
    let bound = |v: Var| -> i64 {
        let da = a.degree_in(v).map(|(_, hi)| hi).unwrap_or(0);
        let db = b.degree_in(v).map(|(_, hi)| hi).unwrap_or(0);
        let dg = gamma.degree_in(v).map(|(_, hi)| hi).unwrap_or(0);
        da.min(db) + dg
    };
    let bounds: Vec<i64> = others.iter().map(|v| bound(*v)).collect();
    let grid_size: i64 = bounds.iter().map(|b| b + 1).product();
    if grid_size > 50_000 {
        return None;
    }

    let la = lc(pa);
    let lb = lc(pb);

    'attempt: for attempt in 0..4u32 {
        // The image x-degree the grid must realize everywhere: scout at the
        // base tuple; a lower degree seen mid-grid restarts with that target.
        let mut expected_dx: Option<i64> = None;
        loop {
            match interp_rec(
                &a, &b, &la, &lb, &gamma, main, &others, &bounds, 0, attempt,
                &mut expected_dx,
            ) {
                Ok(h) => {
                    // primitive part in main, then verify by trial division
                    if h.is_zero() {
                        continue 'attempt;
                    }
                    let hv = h.by_variable(main);
                    let hc = content(&hv);
                    let hpp = make_monic(assemble(main, &divide_coeffs(&hv, &hc)));
                    if a.try_div_exact(&hpp).is_some() && b.try_div_exact(&hpp).is_some() {
                        return Some(hpp);
                    }
                    continue 'attempt;
                }
                Err(InterpAbort::Coprime) => return Some(LaurentPoly::one()),
                Err(InterpAbort::DegreeDropped) => {
                    // expected_dx was lowered in place; redo this attempt
                    continue;
                }
                Err(InterpAbort::BadGrid) => continue 'attempt,
            }
        }
    }
    None
}

enum InterpAbort {
    /// An image GCD of degree zero proves the primitive parts coprime:
    /// the leading coefficients were checked nonzero, so the image of the
    /// true GCD keeps its main-variable degree, and a main-variable-free
    /// divisor of primitive parts would divide their (trivial) contents.
    Coprime,
    /// A grid point produced a smaller image degree than expected; the
    /// expectation has been lowered and the attempt should be redone.
    DegreeDropped,
    /// A leading coefficient vanished on the grid; shift the grid.
    BadGrid,
}

/// Deterministic grid nodes: distinct per index, shifted per attempt and
/// per variable, starting away from 0 and ±1.
fn grid_node(var_index: usize, node_index: i64, attempt: u32) -> GaussianRational {
    GaussianRational::from_int(2 + node_index + 101 * attempt as i64 + 7 * var_index as i64)
}

/// Recursive dense interpolation over `others[depth..]`. Each level
/// substitutes its grid node into every carried polynomial, so the leaf works
/// with already-univariate data instead of re-evaluating the full
/// multivariate inputs once per grid point.
#[allow(clippy::too_many_arguments)]
fn interp_rec(
    a: &LaurentPoly,
    b: &LaurentPoly,
    la: &LaurentPoly,
    lb: &LaurentPoly,
    gamma: &LaurentPoly,
    main: Var,
    others: &[Var],
    bounds: &[i64],
    depth: usize,
    attempt: u32,
    expected_dx: &mut Option<i64>,
) -> Result<LaurentPoly, InterpAbort> {
    if depth == others.len() {
        // leaf: everything but main is substituted away
        if la.is_zero() || lb.is_zero() {
            return Err(InterpAbort::BadGrid);
        }
        let empty = BTreeMap::new();
        let ua = a.eval_except(main, &empty).map_err(|_| InterpAbort::BadGrid)?;
        let ub = b.eval_except(main, &empty).map_err(|_| InterpAbort::BadGrid)?;
        let g = univariate_gcd(ua, ub);
        let dx = (g.len() - 1) as i64;
        if dx == 0 {
            return Err(InterpAbort::Coprime);
        }
        match *expected_dx {
            None => *expected_dx = Some(dx),
            Some(e) if dx < e => {
                *expected_dx = Some(dx);
                return Err(InterpAbort::DegreeDropped);
            }
            Some(e) if dx > e => return Err(InterpAbort::BadGrid),
            _ => {}
        }
        let gv = gamma.eval(&empty).map_err(|_| InterpAbort::BadGrid)?;
        // the image GCD is monic; scale its leading coefficient to γ(point)
        let scaled: Vec<GaussianRational> = g.iter().map(|c| c * &gv).collect();
        return Ok(poly_from_dense(main, &scaled));
    }

    let var = others[depth];
    let n_nodes = bounds[depth] + 1;
    let mut nodes: Vec<GaussianRational> = Vec::with_capacity(n_nodes as usize);
    let mut values: Vec<LaurentPoly> = Vec::with_capacity(n_nodes as usize);
    for j in 0..n_nodes {
        let node = grid_node(depth, j, attempt);
        let val = interp_rec(
            &a.subst_var_const(var, &node),
            &b.subst_var_const(var, &node),
            &la.subst_var_const(var, &node),
            &lb.subst_var_const(var, &node),
            &gamma.subst_var_const(var, &node),
            main,
            others,
            bounds,
            depth + 1,
            attempt,
            expected_dx,
        );
        values.push(val?);
        nodes.push(node);
    }
    Ok(newton_interpolate(var, &nodes, &values))
}

/// Univariate Newton interpolation with polynomial values: returns the
/// unique polynomial C with deg_var(C) < nodes.len() and C(var=node_i) = value_i.
fn newton_interpolate(var: Var, nodes: &[GaussianRational], values: &[LaurentPoly]) -> LaurentPoly {
    let n = nodes.len();
    // divided differences
    let mut dd: Vec<LaurentPoly> = values.to_vec();
    for level in 1..n {
        for j in (level..n).rev() {
            let diff = dd[j].sub(&dd[j - 1]);
            let span = &nodes[j] - &nodes[j - level];
            dd[j] = diff.scale(&span.inv());
        }
    }
    // Horner assembly: C = dd[n-1]; C = C·(var − node_j) + dd[j]
    let mut c = dd[n - 1].clone();
    for j in (0..n - 1).rev() {
        let lin = LaurentPoly::from_monomial(Monomial::var(var.name()))
            .sub(&LaurentPoly::constant(nodes[j].clone()));
        c = c.mul(&lin).add(&dd[j]);
    }
    c
}

/// Euclidean GCD of dense univariate polynomials over Q(i); result is monic.
fn univariate_gcd(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> Vec<GaussianRational> {
    fn trim(p: &mut Vec<GaussianRational>) {
        while p.last().map(|c| c.is_zero()).unwrap_or(false) {
            p.pop();
        }
    }
    fn rem(mut a: Vec<GaussianRational>, b: &[GaussianRational]) -> Vec<GaussianRational> {
        let db = b.len() - 1;
        let lb = b.last().unwrap().clone();
        while a.len() > db {
            let da = a.len() - 1;
            let factor = &a[da] / &lb;
            for (i, bc) in b.iter().enumerate() {
                let idx = da - db + i;
                a[idx] = &a[idx] - &(&factor * bc);
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        a
    }
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(last) = a.last().cloned() {
        let inv = last.inv();
        for c in &mut a {
            *c = &*c * &inv;
        }
    }
    if a.is_empty() {
        a.push(GaussianRational::one());
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::monomial::Monomial;

    fn poly(terms: &[(&[(&str, i64)], i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (monos, c) in terms {
            let mut m = Monomial::one();
            for (v, e) in monos.iter() {
                m = m.mul(&Monomial::var_pow(v, *e));
            }
            p.add_term(m, GaussianRational::from_int(*c));
        }
        p
    }

    #[test]
    fn univariate_common_factor() {
        // gcd(u^2-1, u^2-2u+1) = u-1
        let a = poly(&[(&[("u", 2)], 1), (&[], -1)]);
        let b = poly(&[(&[("u", 2)], 1), (&[("u", 1)], -2), (&[], 1)]);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, poly(&[(&[("u", 1)], 1), (&[], -1)]));
    }

    #[test]
    fn coprime_is_one() {
        let a = poly(&[(&[("u", 1)], 1), (&[("q", 1)], -1)]);
        let b = poly(&[(&[("u", 1)], 1), (&[("q", 1)], 1)]);
        assert_eq!(poly_gcd(&a, &b), LaurentPoly::one());
    }

    #[test]
    fn multivariate_factor() {
        // gcd((u-q)(u+v), (u-q)(u-v)) = u-q
        let umq = poly(&[(&[("u", 1)], 1), (&[("q", 1)], -1)]);
        let upv = poly(&[(&[("u", 1)], 1), (&[("v", 1)], 1)]);
        let umv = poly(&[(&[("u", 1)], 1), (&[("v", 1)], -1)]);
        let g = poly_gcd(&umq.mul(&upv), &umq.mul(&umv));
        assert_eq!(g, umq);
    }

    #[test]
    fn content_only_case() {
        // gcd(q*(u+1), q*(v+1)) = q
        let a = poly(&[(&[("q", 1), ("u", 1)], 1), (&[("q", 1)], 1)]);
        let b = poly(&[(&[("q", 1), ("v", 1)], 1), (&[("q", 1)], 1)]);
        assert_eq!(poly_gcd(&a, &b), poly(&[(&[("q", 1)], 1)]));
    }

    #[test]
    fn repeated_factors() {
        // gcd((u-1)^3, (u-1)^2*(u+5)) = (u-1)^2
        let um1 = poly(&[(&[("u", 1)], 1), (&[], -1)]);
        let up5 = poly(&[(&[("u", 1)], 1), (&[], 5)]);
        let g = poly_gcd(&um1.pow(3), &um1.pow(2).mul(&up5));
        assert_eq!(g, um1.pow(2));
    }

    #[test]
    fn even_exponent_contraction() {
        // gcd(u⁴ - s⁴, u² - s²) = u² - s²: both inputs live in u², s², so the
        // computation contracts to gcd(u² - s², u - s) and expands back.
        let a = poly(&[(&[("u", 4)], 1), (&[("s", 4)], -1)]);
        let b = poly(&[(&[("u", 2)], 1), (&[("s", 2)], -1)]);
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn contraction_respects_mixed_exponents() {
        // u² + 2uv + v² = (u + v)² shares u + v with u² - v²; the odd cross
        // term blocks contraction and the answer must still be exact.
        let sq = poly(&[(&[("u", 2)], 1), (&[("u", 1), ("v", 1)], 2), (&[("v", 2)], 1)]);
        let diff = poly(&[(&[("u", 2)], 1), (&[("v", 2)], -1)]);
        let expect = poly(&[(&[("u", 1)], 1), (&[("v", 1)], 1)]);
        assert_eq!(poly_gcd(&sq, &diff), expect);
    }

    #[test]
    fn contraction_factors_differ_per_variable() {
        // gcd(u⁴v² - 1, u²v - 1)·…: u contracts by 2, v by 1 is blocked by
        // the second input, so the map is u ↦ u² only.
        let a = poly(&[(&[("u", 4), ("v", 2)], 1), (&[], -1)]);
        let b = poly(&[(&[("u", 2), ("v", 1)], 1), (&[], -1)]);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, b);
        // and a coprime pair with even exponents stays coprime
        let c = poly(&[(&[("u", 2)], 1), (&[("v", 2)], 4)]);
        assert_eq!(poly_gcd(&a, &c), LaurentPoly::one());
    }

    #[test]
    fn gcd_divides_both() {
        // a slightly larger mixed case; verify divisibility by exact division
        let f1 = poly(&[(&[("u", 1), ("v", 1)], 1), (&[("q", 2)], -1)]);
        let f2 = poly(&[(&[("u", 2)], 1), (&[("v", 1)], 3), (&[], 1)]);
        let f3 = poly(&[(&[("v", 2)], 2), (&[("q", 1)], 1)]);
        let a = f1.mul(&f2);
        let b = f1.mul(&f3);
        let g = poly_gcd(&a, &b);
        // g == monic f1 (f2, f3 are coprime to f1 and each other)
        let lead = f1.leading_term().unwrap().1.clone();
        assert_eq!(g, f1.scale(&lead.inv()));
        assert_eq!(a.div_exact(&g).mul(&g), a);
        assert_eq!(b.div_exact(&g).mul(&g), b);
    }

    #[test]
    fn three_variable_repeated_factor() {
        // gcd(f²·g, f·g²·h) = f·g with f, g, h in three variables — forces
        // the interpolation path (the coprimality filter sees a nontrivial
        // image).
        let f = poly(&[(&[("u", 1), ("v", 1)], 1), (&[("q", 1)], -1), (&[], 2)]);
        let g = poly(&[(&[("u", 1)], 1), (&[("v", 1), ("q", 1)], 1), (&[], -3)]);
        let h = poly(&[(&[("u", 1)], 1), (&[("q", 1)], 5)]);
        let a = f.pow(2).mul(&g);
        let b = f.mul(&g.pow(2)).mul(&h);
        let gg = poly_gcd(&a, &b);
        let expect = make_monic(f.mul(&g));
        assert_eq!(gg, expect);
        assert_eq!(a.div_exact(&gg).mul(&gg), a);
    }

    #[test]
    fn four_variable_gcd_with_distinct_leading_structures() {
        // gcd((uv−qw)(u+w+1), (uv−qw)(v−w+2)) = uv−qw in four variables
        let f = poly(&[(&[("u", 1), ("v", 1)], 1), (&[("q", 1), ("w", 1)], -1)]);
        let p = poly(&[(&[("u", 1)], 1), (&[("w", 1)], 1), (&[], 1)]);
        let r = poly(&[(&[("v", 1)], 1), (&[("w", 1)], -1), (&[], 2)]);
        let g = poly_gcd(&f.mul(&p), &f.mul(&r));
        assert_eq!(g, make_monic(f));
    }

    #[test]
    fn monomial_inputs_share_monomial_part() {
        // gcd(u²q·3, u·q²·5) = u·q (single-term fast path)
        let a = poly(&[(&[("u", 2), ("q", 1)], 3)]);
        let b = poly(&[(&[("u", 1), ("q", 2)], 5)]);
        assert_eq!(poly_gcd(&a, &b), poly(&[(&[("u", 1), ("q", 1)], 1)]));
    }
}
