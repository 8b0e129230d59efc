use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::product::c_matrix;
use crate::error::{Error, Result};
use crate::linalg::{solve_mod_pk, ModSolve};
use crate::padic::{ExtensionElement, PadicNumber, Ring};
use crate::series::{cyclotomic_poly, reduce_to_level, Algebra, GroupRingElement, Mat2, TruncSeries1};

/// `H_n = -C_1 ... C_(n-1) diag(1, Phi_(p^n)(1+X))` and
/// `H_n^perp = X adj(H_n)`, as polynomials of degree at most `p^n`.
pub fn h_matrices(ring: &Ring, n: u32) -> Result<(Mat2<TruncSeries1>, Mat2<TruncSeries1>)> {
    if n == 0 {
        return Err(Error::LevelZero);
    }
    let cap = (ring.p() as usize).pow(n) + 1;
    let zero = TruncSeries1::zero(ring, cap);
    let mut prod = Mat2::identity_like(&zero);
    for k in 1..n {
        prod = prod.mul(&c_matrix(ring, k, cap)?);
    }
    let diag = Mat2::new(TruncSeries1::one(ring, cap), zero.clone(), zero.clone(), cyclotomic_poly(ring, n, cap));
    let h = prod.mul(&diag).map(|s| s.neg());
    let x = TruncSeries1::var(ring, cap);
    let perp = h.adjugate().map(|s| s.mul(&x));
    Ok((h, perp))
}

/// The images of `H_n` and `H_n^perp` in the group ring of level `n`.
pub fn h_matrices_at_level(ring: &Ring, n: u32) -> Result<(Mat2<GroupRingElement>, Mat2<GroupRingElement>)> {
    let (h, perp) = h_matrices(ring, n)?;
    let down = |s: &TruncSeries1| reduce_to_level(s, n).map(|r| r.element);
    Ok((h.try_map(down)?, perp.try_map(down)?))
}

#[derive(Clone, Debug)]
pub enum Membership {
    /// `v = (a, b) H_n` with the witness `(a, b)` determined modulo
    /// `p^determined_prec`.
    InRowSpan { witness: [GroupRingElement; 2], determined_prec: i64 },
    /// `v H_n^perp` is nonzero.
    NotInRowSpan { residual: [GroupRingElement; 2] },
    Undetermined,
}

fn row_times(v: &[GroupRingElement; 2], m: &Mat2<GroupRingElement>) -> [GroupRingElement; 2] {
    m.left_mul(v)
}

fn residues(g: &GroupRingElement, k: i64) -> Vec<u128> {
    g.coeffs()
        .iter()
        .map(|c| c.coords()[0].residue(k).map_or(0, |r| u128::try_from(r).unwrap_or(0)))
        .collect()
}

/// Decides whether `v` lies in the row span of `H_n` through the kernel of
/// `H_n^perp`, and solves for a witness when it does.
pub fn kernel_membership(v: &[GroupRingElement; 2], n: u32) -> Result<Membership> {
    let ring = v[0].ring().clone();
    if v[0].level() != n || v[1].level() != n {
        return Err(Error::InvalidParameters(format!("vector not at level {n}")));
    }
    if !v[1].ring().same_shape(&ring) {
        return Err(Error::DescriptorMismatch);
    }
    if ring.rank() != 1 {
        return Err(Error::UnsupportedRing("membership is decided over Z_p"));
    }
    let (h, perp) = h_matrices_at_level(&ring, n)?;
    let w = row_times(v, &perp);
    if !w[0].is_zero() || !w[1].is_zero() {
        return Ok(Membership::NotInRowSpan { residual: w });
    }
    let k = v[0].prec().min(v[1].prec()).min(ring.prec());
    if k <= 0 {
        return Ok(Membership::Undetermined);
    }
    let len = v[0].len();
    let hr: Vec<Vec<u128>> = h.entries().iter().map(|e| residues(e, k)).collect();
    // unknowns (a_s, b_s); equation (col j, degree t)
    let mut a = vec![vec![0u128; 2 * len]; 2 * len];
    for j in 0..2 {
        for t in 0..len {
            for s in 0..len {
                let d = (t + len - s) % len;
                a[j * len + t][s] = hr[j][d];
                a[j * len + t][len + s] = hr[2 + j][d];
            }
        }
    }
    let rhs: Vec<u128> = residues(&v[0], k).into_iter().chain(residues(&v[1], k)).collect();
    let p = ring.p();
    match solve_mod_pk(&a, &rhs, p as u64, k as u32)? {
        ModSolve::Inconsistent => Ok(Membership::Undetermined),
        ModSolve::Solved { x, loss } => {
            let el = |x: &u128| ExtensionElement::from_padic(&ring, &PadicNumber::from_bigint(p, &BigInt::from(*x), k));
            let a = GroupRingElement::from_coeffs(&ring, n, x[..len].iter().map(el).collect())?;
            let b = GroupRingElement::from_coeffs(&ring, n, x[len..].iter().map(el).collect())?;
            Ok(Membership::InRowSpan { witness: [a, b], determined_prec: k - loss as i64 })
        }
    }
}
