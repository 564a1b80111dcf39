//! Exact linear algebra on tensor products of the two-dimensional space V.
//!
//! A [`Mat`] acts on an ordered list of *legs*, each of dimension 2; a matrix
//! on n legs is dense 2ⁿ×2ⁿ.  Row/column indices decompose into one binary
//! digit per leg, most significant digit first — so for legs `[1,2]` the
//! basis order is `|00⟩, |01⟩, |10⟩, |11⟩`, i.e. the textbook ordering
//! (1⊗1, 1⊗2, 2⊗1, 2⊗2).
//!
//! Entries are [`Coeff`] values: exact rational functions times formal
//! prefactor classes.  All checks in this engine live on at most three legs
//! (8×8), where dense storage beats any sparse scheme.
//!
//! Inversion is exact fraction-field Gauss–Jordan elimination with a
//! deterministic pivot choice (first row with a nonzero scalar pivot).
//! Prefactor-laden entries are not invertible in general, so inversion
//! requires every entry to be a pure scalar and errors otherwise; every
//! computed inverse is verified by multiplying back to the identity.

use std::fmt;

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::prefactor::Coeff;

/// Identifier for one tensor leg.
pub type Leg = u8;

/// Dense exact matrix on a tensor product of two-dimensional legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    legs: Vec<Leg>,
    dim: usize,
    /// Row-major, `entries[row * dim + col]`.
    entries: Vec<Coeff>,
}

impl Mat {
    pub fn zero(legs: &[Leg]) -> Mat {
        let dim = 1usize << legs.len();
        Mat {
            legs: legs.to_vec(),
            dim,
            entries: vec![Coeff::zero(); dim * dim],
        }
    }

    pub fn identity(legs: &[Leg]) -> Mat {
        let mut m = Mat::zero(legs);
        for i in 0..m.dim {
            m.entries[i * m.dim + i] = Coeff::one();
        }
        m
    }

    /// Build from an entry function over (row, col).
    pub fn from_fn(legs: &[Leg], f: impl Fn(usize, usize) -> Coeff) -> Mat {
        let mut m = Mat::zero(legs);
        for r in 0..m.dim {
            for c in 0..m.dim {
                m.entries[r * m.dim + c] = f(r, c);
            }
        }
        m
    }

    /// Build a matrix of pure scalars.
    pub fn from_scalar_fn(legs: &[Leg], f: impl Fn(usize, usize) -> Scalar) -> Mat {
        Mat::from_fn(legs, |r, c| Coeff::from_scalar(f(r, c)))
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Coeff {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Coeff) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let e = self.get(r, c);
                if r == c { e.is_one() } else { e.is_zero() }
            })
        })
    }

    /// Nonzero entries as ((row, col), coefficient) in row-major order;
    /// the standard failure witness in reports.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize), Coeff)> {
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

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_legs(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_legs(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = a.sub(b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.neg();
        }
        out
    }

    /// Multiply every entry by a coefficient.
    pub fn scale(&self, c: &Coeff, ctx: &Ctx) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.mul(c, ctx);
        }
        out
    }

    fn check_same_legs(&self, other: &Mat) -> Result<()> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch(format!(
                "legs {:?} vs {:?}",
                self.legs, other.legs
            )));
        }
        Ok(())
    }

    /// Panicking multiply for call sites whose leg structure is fixed by
    /// construction (a leg mismatch there is a programming error).
    pub fn dot(&self, other: &Mat, ctx: &Ctx) -> Mat {
        mat_mul(self, other, ctx).expect("leg-compatible matrices")
    }

    /// Panicking subtraction for statically leg-compatible matrices.
    pub fn minus(&self, other: &Mat) -> Mat {
        self.sub(other).expect("leg-compatible matrices")
    }

    /// Panicking addition for statically leg-compatible matrices.
    pub fn plus(&self, other: &Mat) -> Mat {
        self.add(other).expect("leg-compatible matrices")
    }

    /// Full transpose (all legs at once).
    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.legs, |r, c| self.get(c, r).clone())
    }

    /// Tensor product; leg lists concatenate and must be disjoint.
    pub fn tensor(&self, other: &Mat, ctx: &Ctx) -> Result<Mat> {
        for l in &other.legs {
            if self.legs.contains(l) {
                return Err(Error::LegMismatch(format!("duplicate leg {} in tensor", l)));
            }
        }
        let legs: Vec<Leg> = self.legs.iter().chain(other.legs.iter()).copied().collect();
        let d2 = other.dim;
        Ok(Mat::from_fn(&legs, |r, c| {
            let (r1, r2) = (r / d2, r % d2);
            let (c1, c2) = (c / d2, c % d2);
            self.get(r1, c1).mul(other.get(r2, c2), ctx)
        }))
    }
}

/// Embed `m` (acting on `target_legs`, in that order) into the identity on
/// the full space `all_legs`; index order follows `all_legs`.
pub fn mat_embed(m: &Mat, target_legs: &[Leg], all_legs: &[Leg]) -> Result<Mat> {
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
    let out_dim_legs = all_legs.len();
    let sub = |index: usize| -> usize {
        // collect the digits of the target legs, in target order
        let mut s = 0usize;
        for &p in &positions {
            s = (s << 1) | ((index >> (out_dim_legs - 1 - p)) & 1);
        }
        s
    };
    let spectator_digits = |index: usize| -> usize {
        let mut s = 0usize;
        for p in 0..out_dim_legs {
            if !positions.contains(&p) {
                s = (s << 1) | ((index >> (out_dim_legs - 1 - p)) & 1);
            }
        }
        s
    };
    Ok(Mat::from_fn(all_legs, |r, c| {
        if spectator_digits(r) != spectator_digits(c) {
            Coeff::zero()
        } else {
            m.get(sub(r), sub(c)).clone()
        }
    }))
}

/// Transpose the indices of one named leg, leaving the others untouched.
pub fn mat_partial_transpose(m: &Mat, leg: Leg) -> Result<Mat> {
    let pos = m
        .legs
        .iter()
        .position(|l| *l == leg)
        .ok_or_else(|| Error::LegMismatch(format!("leg {} not in {:?}", leg, m.legs)))?;
    let bit = m.legs.len() - 1 - pos;
    Ok(Mat::from_fn(&m.legs, |r, c| {
        let rb = (r >> bit) & 1;
        let cb = (c >> bit) & 1;
        let r2 = (r & !(1 << bit)) | (cb << bit);
        let c2 = (c & !(1 << bit)) | (rb << bit);
        m.get(r2, c2).clone()
    }))
}

/// Reorder/relabel legs: `perm[i]` names the leg of `m` that becomes the
/// i-th leg of the result.  `permute_legs(R, [2,1])` is R₂₁ built from R₁₂.
pub fn permute_legs(m: &Mat, perm: &[Leg]) -> Result<Mat> {
    if perm.len() != m.legs.len() {
        return Err(Error::LegMismatch(format!(
            "permutation {:?} does not cover legs {:?}",
            perm, m.legs
        )));
    }
    let mut source_pos = Vec::with_capacity(perm.len());
    for p in perm {
        match m.legs.iter().position(|l| l == p) {
            Some(s) => source_pos.push(s),
            None => {
                return Err(Error::LegMismatch(format!(
                    "leg {} not among {:?}",
                    p, m.legs
                )))
            }
        }
    }
    let n = m.legs.len();
    // The result keeps the original leg names and order; the data moves so
    // that the result acts on leg perm[i] the way m acted on its i-th leg.
    // Routing a result index to the m index it reads from: m's digit i is
    // the result digit at the position where perm[i] sits.
    let route = |index: usize| -> usize {
        let mut out = 0usize;
        for (i, &sp) in source_pos.iter().enumerate() {
            let digit = (index >> (n - 1 - sp)) & 1;
            out |= digit << (n - 1 - i);
        }
        out
    };
    Ok(Mat::from_fn(&m.legs, |r, c| m.get(route(r), route(c)).clone()))
}

/// Exact matrix product; legs must agree in order.
pub fn mat_mul(a: &Mat, b: &Mat, ctx: &Ctx) -> Result<Mat> {
    a.check_same_legs(b)?;
    let d = a.dim;
    let mut out = Mat::zero(&a.legs);
    for r in 0..d {
        for k in 0..d {
            let ark = a.get(r, k);
            if ark.is_zero() {
                continue;
            }
            for c in 0..d {
                let bkc = b.get(k, c);
                if bkc.is_zero() {
                    continue;
                }
                let cur = out.get(r, c).add(&ark.mul(bkc, ctx));
                out.set(r, c, cur);
            }
        }
    }
    Ok(out)
}

/// Exact inverse via Gauss–Jordan; requires prefactor-trivial entries.
/// The result is verified by multiplying back to the identity.
pub fn mat_inv(a: &Mat, ctx: &Ctx) -> Result<Mat> {
    let d = a.dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    for r in 0..d {
        let mut row = Vec::with_capacity(d);
        for c in 0..d {
            match a.get(r, c).as_scalar() {
                Some(s) => row.push(s),
                None => {
                    return Err(Error::SingularMatrix(format!(
                        "entry ({}, {}) carries a formal prefactor; only scalar matrices are invertible",
                        r, c
                    )))
                }
            }
        }
        rows.push(row);
    }
    let inv = scalar_mat_inv(&rows)?;
    let out = Mat::from_scalar_fn(&a.legs, |r, c| inv[r][c].clone()).posted(ctx);
    let product = mat_mul(a, &out, ctx)?;
    if !product.is_identity() {
        return Err(Error::SingularMatrix(
            "inverse verification a*a^-1 == 1 failed".to_string(),
        ));
    }
    Ok(out)
}

impl Mat {
    /// Post-process all entries through the context.
    pub fn posted(&self, ctx: &Ctx) -> Mat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.posted(ctx);
        }
        out
    }
}

/// Exact inverse of a plain scalar matrix (any size) by Gauss–Jordan with
/// deterministic pivoting: the first row with a nonzero pivot wins.
pub fn scalar_mat_inv(a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let id: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    scalar_mat_solve(a, &id)
}

/// Solve A·X = B exactly (A square, B given column-set as rows of a matrix);
/// returns X.  Deterministic pivoting; errors with the pivot column on a
/// singular A.
pub fn scalar_mat_solve(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let m = if n == 0 { 0 } else { b[0].len() };
    let mut left: Vec<Vec<Scalar>> = a.to_vec();
    let mut right: Vec<Vec<Scalar>> = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !left[r][col].is_zero())
            .ok_or_else(|| {
                Error::SingularMatrix(format!("no nonzero pivot in column {}", col))
            })?;
        left.swap(col, pivot_row);
        right.swap(col, pivot_row);
        let pivot = left[col][col].clone();
        let pinv = pivot.inv().expect("pivot is nonzero");
        for c in 0..n {
            left[col][c] = left[col][c].mul(&pinv);
        }
        for c in 0..m {
            right[col][c] = right[col][c].mul(&pinv);
        }
        for r in 0..n {
            if r == col || left[r][col].is_zero() {
                continue;
            }
            let factor = left[r][col].clone();
            for c in 0..n {
                let delta = factor.mul(&left[col][c]);
                left[r][c] = left[r][c].sub(&delta);
            }
            for c in 0..m {
                let delta = factor.mul(&right[col][c]);
                right[r][c] = right[r][c].sub(&delta);
            }
        }
    }
    Ok(right)
}

/// The 4×4 swap matrix P on two legs: P(x⊗y) = y⊗x.
pub fn swap_p(legs: &[Leg; 2]) -> Mat {
    Mat::from_scalar_fn(legs, |r, c| {
        let (r1, r2) = (r >> 1, r & 1);
        let (c1, c2) = (c >> 1, c & 1);
        if r1 == c2 && r2 == c1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat on legs {:?}:", self.legs)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Monomial;
    use crate::prefactor::PrefactorElement;

    fn ctx() -> Ctx {
        Ctx::symbolic()
    }

    /// A full-rank 4×4 matrix with distinct entries for structure tests:
    /// a rank-deficient generic part plus v on the diagonal, which makes
    /// the determinant's leading v-coefficient 1 while keeping three
    /// variables in play.
    fn generic4(legs: &[Leg; 2]) -> Mat {
        Mat::from_scalar_fn(legs, |r, c| {
            let base = Scalar::from_monomial(
                &Monomial::var_pow("u", r as i64 + 1).mul(&Monomial::var_pow("q", c as i64 - 2)),
            )
            .add(&Scalar::from_int((3 * r + c) as i64));
            if r == c {
                base.add(&Scalar::var("v"))
            } else {
                base
            }
        })
    }

    #[test]
    fn embed_identity_is_identity() {
        let id = Mat::identity(&[1, 2]);
        let e = mat_embed(&id, &[1, 2], &[1, 2, 3]).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn embed_is_multiplicative() {
        let a = generic4(&[1, 2]);
        let b = a.transpose();
        let ab = mat_mul(&a, &b, &ctx()).unwrap();
        let ea = mat_embed(&a, &[1, 2], &[1, 2, 3]).unwrap();
        let eb = mat_embed(&b, &[1, 2], &[1, 2, 3]).unwrap();
        let eab = mat_embed(&ab, &[1, 2], &[1, 2, 3]).unwrap();
        assert_eq!(mat_mul(&ea, &eb, &ctx()).unwrap(), eab);
    }

    #[test]
    fn permuted_embedding_agrees_with_swap_conjugation() {
        // A₂₁ built by leg permutation equals P·A₁₂·P.
        let a = generic4(&[1, 2]);
        let a21 = permute_legs(&a, &[2, 1]).unwrap();
        let p = swap_p(&[1, 2]);
        let pap = mat_mul(&mat_mul(&p, &a, &ctx()).unwrap(), &p, &ctx()).unwrap();
        assert_eq!(a21, pap);
    }

    #[test]
    fn cyclic_leg_permutation_routes_factors() {
        // m = X⊗Y⊗Z diagonal; perm [2,3,1] sends X to leg 2, Y to leg 3,
        // Z to leg 1, so the result is Z⊗X⊗Y.
        let diag = |leg: Leg, base: i64| {
            Mat::from_scalar_fn(&[leg], move |r, c| {
                if r == c {
                    Scalar::from_int(base + r as i64)
                } else {
                    Scalar::zero()
                }
            })
        };
        let (x, y, z) = (diag(1, 10), diag(2, 20), diag(3, 30));
        let m = x.tensor(&y, &ctx()).unwrap().tensor(&z, &ctx()).unwrap();
        let permuted = permute_legs(&m, &[2, 3, 1]).unwrap();
        let (z1, x2, y3) = (diag(1, 30), diag(2, 10), diag(3, 20));
        let expected = z1.tensor(&x2, &ctx()).unwrap().tensor(&y3, &ctx()).unwrap();
        assert_eq!(permuted, expected);
    }

    #[test]
    fn swap_is_involution() {
        let p = swap_p(&[1, 2]);
        assert!(mat_mul(&p, &p, &ctx()).unwrap().is_identity());
    }

    #[test]
    fn partial_transpose_is_involution_and_acts_on_first_leg() {
        let a = generic4(&[1, 2]);
        let t1 = mat_partial_transpose(&a, 1).unwrap();
        assert_eq!(mat_partial_transpose(&t1, 1).unwrap(), a);
        // (x ⊗ y)^{t₁} = xᵗ ⊗ y for decomposable matrices.
        let x = Mat::from_scalar_fn(&[1], |r, c| Scalar::from_int((2 * r + c + 1) as i64));
        let y = Mat::from_scalar_fn(&[2], |r, c| {
            Scalar::from_monomial(&Monomial::var_pow("v", (r + 2 * c) as i64))
        });
        let xy = x.tensor(&y, &ctx()).unwrap();
        let lhs = mat_partial_transpose(&xy, 1).unwrap();
        let rhs = x.transpose().tensor(&y, &ctx()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embed_into_different_slots() {
        // Embedding into legs (1,3) of a 3-leg space leaves leg 2 diagonal.
        let a = generic4(&[1, 3]);
        let e = mat_embed(&a, &[1, 3], &[1, 2, 3]).unwrap();
        // entry ((i,s,j),(k,t,l)) = δ_st · a[(i,j),(k,l)]
        for r in 0..8 {
            for c in 0..8 {
                let (ri, rs, rj) = ((r >> 2) & 1, (r >> 1) & 1, r & 1);
                let (ck, cs, cl) = ((c >> 2) & 1, (c >> 1) & 1, c & 1);
                let expect = if rs != cs {
                    Coeff::zero()
                } else {
                    a.get((ri << 1) | rj, (ck << 1) | cl).clone()
                };
                assert_eq!(e.get(r, c), &expect, "entry ({}, {})", r, c);
            }
        }
    }

    #[test]
    fn inverse_roundtrip_and_verification() {
        let a = generic4(&[1, 2]);
        let ainv = mat_inv(&a, &ctx()).unwrap();
        assert!(mat_mul(&a, &ainv, &ctx()).unwrap().is_identity());
        assert!(mat_mul(&ainv, &a, &ctx()).unwrap().is_identity());
        let back = mat_inv(&ainv, &ctx()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = Mat::from_scalar_fn(&[1], |r, _| Scalar::from_int(r as i64 + 1));
        // rows [1,1] and [2,2] are dependent
        let err = mat_inv(&a, &ctx()).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix(_)));
    }

    #[test]
    fn prefactor_entries_block_inversion() {
        let mut a = Mat::identity(&[1]);
        a.set(
            0,
            0,
            Coeff::from_prefactor(&PrefactorElement::f_symbol(&Monomial::var("u"), 1)),
        );
        let err = mat_inv(&a, &ctx()).unwrap_err();
        assert!(matches!(err, Error::SingularMatrix(_)));
    }

    #[test]
    fn scalar_solve_reproduces_inverse() {
        let rows = vec![
            vec![Scalar::from_int(2), Scalar::var("u")],
            vec![Scalar::zero(), Scalar::from_int(3)],
        ];
        let inv = scalar_mat_inv(&rows).unwrap();
        // [[2,u],[0,3]]⁻¹ = [[1/2, -u/6],[0,1/3]]
        assert_eq!(inv[0][0], Scalar::from_int(2).inv().unwrap());
        assert_eq!(
            inv[0][1],
            Scalar::var("u").neg().div(&Scalar::from_int(6)).unwrap()
        );
        assert_eq!(inv[1][1], Scalar::from_int(3).inv().unwrap());
    }

    #[test]
    fn mul_is_associative_on_a_triple() {
        let a = generic4(&[1, 2]);
        let b = a.transpose();
        let p = swap_p(&[1, 2]);
        let l = mat_mul(&mat_mul(&a, &b, &ctx()).unwrap(), &p, &ctx()).unwrap();
        let r = mat_mul(&a, &mat_mul(&b, &p, &ctx()).unwrap(), &ctx()).unwrap();
        assert_eq!(l, r);
    }
}
