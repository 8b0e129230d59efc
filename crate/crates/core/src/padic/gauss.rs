use alloc::vec::Vec;

use crate::error::Result;

use super::element::ExtensionElement;
use super::frobenius::teichmuller;
use super::ring::{Ring, RingDescriptor};
use super::RingKind;

/// A character of `(Z/p^(n+1))^x` with values in `mu_(p-1) mu_(p^n)`,
/// given on the least primitive root `g` modulo `p^(n+1)` by
/// `chi(g) = omega(g)^tame * zeta_(p^n)^wild`, with `omega` the
/// Teichmuller character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Character {
    pub level: u32,
    pub tame: u64,
    pub wild: u64,
}

impl Character {
    pub fn trivial(level: u32) -> Self {
        Character { level, tame: 0, wild: 0 }
    }

    /// The inverse character.
    pub fn inverse(&self, p: u32) -> Self {
        let tame = (p as u64 - 1 - self.tame % (p as u64 - 1)) % (p as u64 - 1);
        let pn = (p as u64).pow(self.level);
        let wild = (pn - self.wild % pn) % pn;
        Character { level: self.level, tame, wild }
    }

    /// Conductor exactly `p^(level+1)`.
    pub fn is_primitive(&self, p: u32) -> bool {
        if self.level == 0 {
            self.tame % (p as u64 - 1) != 0
        } else {
            self.wild % p as u64 != 0
        }
    }

    /// `chi(-1)`, which is `(-1)^tame`.
    pub fn sign(&self) -> i64 {
        if self.tame % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Gauss sum together with the primitivity flag of its character.
#[derive(Debug, Clone)]
pub struct GaussSum {
    pub value: ExtensionElement,
    pub primitive: bool,
}

/// Least primitive root modulo `p^k` for odd p.
pub fn primitive_root(p: u32, k: u32) -> u64 {
    let m = (p as u64).pow(k);
    let phi = m / p as u64 * (p as u64 - 1);
    let mut factors: Vec<u64> = Vec::new();
    let mut n = phi;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..m)
        .find(|&g| g % p as u64 != 0 && factors.iter().all(|&q| super::fp::pow_mod(g, phi / q, m) != 1))
        .expect("odd prime powers have primitive roots")
}

/// `tau(chi) = sum_a chi(a) zeta_(p^(n+1))^a` in the cyclotomic ring of level `n + 1`.
pub fn gauss_sum(p: u32, ap: i64, chi: Character, prec: i64) -> Result<GaussSum> {
    let n = chi.level;
    let ring: Ring = RingDescriptor::new(p, ap, RingKind::Cyc(n + 1), prec)?;
    let g = primitive_root(p, n + 1);
    let m = (p as u64).pow(n + 1);
    let phi = m / p as u64 * (p as u64 - 1);
    let omega = teichmuller(&ring, &[g % p as u64])?;
    let omega_t = omega.pow(chi.tame % (p as u64 - 1));
    let mut acc = ExtensionElement::zero(&ring);
    let mut a = 1u64;
    let mut tame_pow = ExtensionElement::one(&ring);
    for k in 0..phi {
        let wild = ExtensionElement::zeta_pow(&ring, (p as i64) * ((k * chi.wild) as i64))?;
        let term = tame_pow.mul(&wild).mul(&ExtensionElement::zeta_pow(&ring, a as i64)?);
        acc = acc.add(&term);
        a = a * g % m;
        tame_pow = tame_pow.mul(&omega_t);
    }
    Ok(GaussSum { value: acc, primitive: chi.is_primitive(p) })
}
