use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::padic::{ppow, ExtensionElement, PadicNumber, Ring};

use super::trunc1::TruncSeries1;

/// `C(m, k)` for `k < cap`.
pub(crate) fn binomial_row(m: &BigInt, cap: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(cap);
    let mut c = BigInt::from(1);
    for k in 0..cap {
        if k > 0 {
            c = c * (m - BigInt::from(k - 1)) / BigInt::from(k);
        }
        out.push(c.clone());
    }
    out
}

fn from_ints(ring: &Ring, ints: &[BigInt]) -> TruncSeries1 {
    let coeffs = ints
        .iter()
        .map(|x| if x.is_zero() { ExtensionElement::zero(ring) } else { ExtensionElement::from_ints(ring, 0, &scalar(ring, x), ring.prec()) })
        .collect();
    TruncSeries1::from_coeffs(ring, coeffs).expect("coefficients in ring")
}

fn scalar(ring: &Ring, x: &BigInt) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); ring.rank()];
    v[0] = x.clone();
    v
}

/// Integer coefficients of `Phi_(p^n)(1+X)` below `cap`.
pub(crate) fn cyclotomic_ints(p: u32, n: u32, cap: usize) -> Vec<BigInt> {
    let step = BigInt::from(ppow(p, n as i64 - 1));
    let mut acc = vec![BigInt::zero(); cap];
    for i in 0..p {
        let row = binomial_row(&(&step * i), cap);
        for (a, r) in acc.iter_mut().zip(row) {
            *a += r;
        }
    }
    acc
}

/// `Phi_(p^n)(1+X) = sum_(i<p) (1+X)^(i p^(n-1))`, for `n >= 1`.
pub fn cyclotomic_poly(ring: &Ring, n: u32, cap: usize) -> TruncSeries1 {
    assert!(n >= 1, "cyclotomic level starts at 1");
    from_ints(ring, &cyclotomic_ints(ring.p(), n, cap))
}

/// `(1+X)^(p^n) - 1`.
pub fn omega(ring: &Ring, n: u32, cap: usize) -> TruncSeries1 {
    let mut row = binomial_row(&BigInt::from(ppow(ring.p(), n as i64)), cap);
    if cap > 0 {
        row[0] = BigInt::zero();
    }
    from_ints(ring, &row)
}

/// `log(1+X) = sum_(j>=1) (-1)^(j+1) X^j / j`, each coefficient at the
/// ring precision.
pub fn log_one_plus(ring: &Ring, cap: usize) -> Result<TruncSeries1> {
    let p = ring.p();
    let mut s = TruncSeries1::zero(ring, cap);
    for j in 1..cap {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = PadicNumber::from_ratio(p, sign, j as i64, ring.prec())?;
        s.set_coeff(j, ExtensionElement::from_padic(ring, &c));
    }
    Ok(s)
}
