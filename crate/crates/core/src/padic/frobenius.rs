use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::element::ExtensionElement;
use super::number::PadicNumber;
use super::ring::{Ring, RingDescriptor};

/// Evaluates a polynomial with small integer coefficients at `x`.
pub(crate) fn eval_int_poly(coeffs: &[i64], x: &ExtensionElement) -> ExtensionElement {
    let ring = x.ring();
    let mut acc = ExtensionElement::zero(ring);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&ExtensionElement::from_i64(ring, c));
    }
    acc
}

/// Newton iteration for a simple root of `poly` near `x0`.
pub(crate) fn hensel_root(poly: &[i64], x0: &ExtensionElement) -> Result<ExtensionElement> {
    let deriv: Vec<i64> = poly.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect();
    let mut x = x0.clone();
    let prec = x0.ring().prec();
    let mut k = 1;
    while k < 2 * prec {
        let step = eval_int_poly(poly, &x).div(&eval_int_poly(&deriv, &x))?;
        x = x.sub(&step);
        k *= 2;
    }
    if !eval_int_poly(poly, &x).is_zero() {
        return Err(Error::NonConvergent);
    }
    Ok(x)
}

/// Images of `w^u` under Frobenius, as unramified coordinates.
pub(super) fn frobenius_table(d: &RingDescriptor) -> Result<Vec<Vec<PadicNumber>>> {
    let unram: Ring = Arc::new(RingDescriptor {
        p: d.p,
        ap: d.ap,
        prec: d.prec,
        quad: false,
        cyc: 0,
        unram: d.unram,
        unram_poly: d.unram_poly.clone(),
        frob: Vec::new(),
    });
    let poly: Vec<i64> = d.unram_poly.iter().map(|&c| c as i64).collect();
    let w = ExtensionElement::unram_gen(&unram)?;
    let root = hensel_root(&poly, &w.pow(d.p as u64))?;
    let mut table = Vec::with_capacity(unram.rank());
    let mut acc = ExtensionElement::one(&unram);
    for _ in 0..unram.rank() {
        table.push(acc.coords().to_vec());
        acc = acc.mul(&root);
    }
    Ok(table)
}

/// The Frobenius automorphism on the unramified factor.
pub fn frobenius(x: &ExtensionElement) -> Result<ExtensionElement> {
    let ring = x.ring();
    if ring.unram_level() == 0 {
        return Err(Error::UnsupportedRing("frobenius needs an unramified factor"));
    }
    let table = ring.frob_table();
    let p = ring.p();
    let mut coords = alloc::vec![PadicNumber::exact_zero(p); ring.rank()];
    for q in 0..ring.quad_rank() {
        for c in 0..ring.cyc_rank() {
            for (u, row) in table.iter().enumerate() {
                let a = x.coord(q, c, u);
                if a.is_exact_zero() {
                    continue;
                }
                for (v, t) in row.iter().enumerate() {
                    let i = ring.index(q, c, v);
                    coords[i] = coords[i].add(&a.mul(t));
                }
            }
        }
    }
    ExtensionElement::from_coords(ring, coords)
}

/// `frobenius^k`, with negative `k` read through the order `p^m`.
pub fn frobenius_pow(x: &ExtensionElement, k: i64) -> Result<ExtensionElement> {
    let ring = x.ring();
    if ring.unram_level() == 0 {
        return Ok(x.clone());
    }
    let order = ring.unram_rank() as i64;
    let k = k.rem_euclid(order);
    let mut y = x.clone();
    for _ in 0..k {
        y = frobenius(&y)?;
    }
    Ok(y)
}

/// Inverse Frobenius, `frobenius^(p^m - 1)`.
pub fn inverse_frobenius(x: &ExtensionElement) -> Result<ExtensionElement> {
    frobenius_pow(x, -1)
}

/// The Teichmuller lift of a residue-field element, given by its
/// coordinates modulo p in the basis `w^u` of the unramified factor.
pub fn teichmuller(ring: &Ring, residue: &[u64]) -> Result<ExtensionElement> {
    let ur = ring.unram_rank();
    if residue.len() != ur {
        return Err(Error::DescriptorMismatch);
    }
    let p = ring.p() as u64;
    if residue.iter().all(|&r| r % p == 0) {
        return Err(Error::ZeroResidue);
    }
    let mut ints = alloc::vec![BigInt::from(0); ring.rank()];
    for (u, &r) in residue.iter().enumerate() {
        ints[ring.index(0, 0, u)] = BigInt::from(r % p);
    }
    let mut x = ExtensionElement::from_ints(ring, 0, &ints, ring.prec());
    let q_minus_one = (p as i64).pow(ur as u32) - 1;
    let denom = PadicNumber::from_i64(ring.p(), q_minus_one, ring.prec());
    let one = ExtensionElement::one(ring);
    let mut k = 1;
    while k < 2 * ring.prec() {
        let f = x.pow(q_minus_one as u64).sub(&one);
        let step = x.mul(&f).scale(&denom.inv()?);
        x = x.sub(&step);
        k *= 2;
    }
    if !x.pow(q_minus_one as u64).agrees(&one) {
        return Err(Error::NonConvergent);
    }
    Ok(x)
}
