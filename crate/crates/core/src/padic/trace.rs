use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::element::{reduce_full, ExtensionElement};
use super::embedding::Embedding;
use super::frobenius::frobenius_pow;
use super::ring::Ring;

/// Whether a trace or a norm is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Trace,
    Norm,
}

/// `zeta -> zeta^a` on the cyclotomic factor, `a` prime to p.
pub fn cyclotomic_automorphism(x: &ExtensionElement, a: i64) -> ExtensionElement {
    let ring = x.ring();
    let level = ring.cyc_level();
    if level == 0 {
        return x.clone();
    }
    let s = match x.scaled() {
        Some(s) => s,
        None => return x.clone(),
    };
    let order = (ring.p() as i64).pow(level);
    let a = a.rem_euclid(order) as usize;
    let (qr, cr, ur) = (ring.quad_rank(), ring.cyc_rank(), ring.unram_rank());
    let width = order as usize;
    let mut t = vec![BigInt::zero(); qr * width * ur];
    for q in 0..qr {
        for c in 0..cr {
            for u in 0..ur {
                let v = &s.ints[ring.index(q, c, u)];
                if !v.is_zero() {
                    t[(q * width + (a * c) % width) * ur + u] += v;
                }
            }
        }
    }
    let ints = reduce_full(ring, t, width, None);
    ExtensionElement::from_ints(ring, s.shift, &ints, s.prec)
}

fn check_subring(source: &Ring, target: &Ring) -> Result<()> {
    let ok = source.p() == target.p()
        && source.has_quad() == target.has_quad()
        && target.cyc_level() <= source.cyc_level()
        && target.unram_level() <= source.unram_level();
    if ok {
        Ok(())
    } else {
        Err(Error::NotASubring)
    }
}

/// The Galois conjugates of `x` over the subring `target`.
pub fn conjugates(x: &ExtensionElement, target: &Ring) -> Result<Vec<ExtensionElement>> {
    let ring = x.ring();
    check_subring(ring, target)?;
    let p = ring.p() as i64;
    let order = p.pow(ring.cyc_level());
    let fixed = p.pow(target.cyc_level());
    let cyc: Vec<i64> = (1..=order)
        .filter(|a| a % p != 0 && (target.cyc_level() == 0 || (a - 1) % fixed == 0))
        .collect();
    let step = p.pow(target.unram_level());
    let count = p.pow(ring.unram_level() - target.unram_level());
    let mut out = Vec::with_capacity(cyc.len() * count as usize);
    for &a in &cyc {
        let y = cyclotomic_automorphism(x, a);
        for j in 0..count {
            out.push(frobenius_pow(&y, j * step)?);
        }
    }
    Ok(out)
}

/// Trace or norm of `x` down to the subring `target`.
pub fn trace_norm(x: &ExtensionElement, target: &Ring, kind: TraceKind) -> Result<ExtensionElement> {
    let conj = conjugates(x, target)?;
    let ring = x.ring();
    let acc = match kind {
        TraceKind::Trace => conj.iter().fold(ExtensionElement::zero(ring), |a, y| a.add(y)),
        TraceKind::Norm => conj.iter().skip(1).fold(conj[0].clone(), |a, y| a.mul(y)),
    };
    let target = target.at_prec(ring.prec())?;
    Embedding::new(&target, ring)?.project(&acc)
}

pub fn trace(x: &ExtensionElement, target: &Ring) -> Result<ExtensionElement> {
    trace_norm(x, target, TraceKind::Trace)
}

pub fn norm(x: &ExtensionElement, target: &Ring) -> Result<ExtensionElement> {
    trace_norm(x, target, TraceKind::Norm)
}
