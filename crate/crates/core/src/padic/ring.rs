use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::fp;
use super::number::PadicNumber;

/// Extension kind of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Base,
    Quad,
    /// Unramified of residue degree `p^m`.
    Unram(u32),
    /// `Z_p[zeta]` with `zeta` of order `p^n`.
    Cyc(u32),
    Composite { n: u32, m: u32 },
}

/// A coefficient ring: tensor product of an optional quadratic factor
/// `Z_p[alpha]/(alpha^2 - ap*alpha + p)`, a cyclotomic factor of level `cyc`
/// and an unramified factor of residue degree `p^unram`, carried at
/// absolute precision `prec`.
#[derive(Debug)]
pub struct RingDescriptor {
    pub(super) p: u32,
    pub(super) ap: i64,
    pub(super) prec: i64,
    pub(super) quad: bool,
    pub(super) cyc: u32,
    pub(super) unram: u32,
    pub(super) unram_poly: Vec<u64>,
    pub(super) frob: Vec<Vec<PadicNumber>>,
}

impl PartialEq for RingDescriptor {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}
impl Eq for RingDescriptor {}

pub type Ring = Arc<RingDescriptor>;

impl RingDescriptor {
    pub fn new(p: u32, ap: i64, kind: RingKind, prec: i64) -> Result<Ring> {
        let (quad, cyc, unram) = match kind {
            RingKind::Base => (false, 0, 0),
            RingKind::Quad => (true, 0, 0),
            RingKind::Unram(m) => (false, 0, m),
            RingKind::Cyc(n) => (false, n, 0),
            RingKind::Composite { n, m } => (false, n, m),
        };
        Self::with_factors(p, ap, quad, cyc, unram, prec)
    }

    /// General tensor product of the three factors.
    pub fn with_factors(p: u32, ap: i64, quad: bool, cyc: u32, unram: u32, prec: i64) -> Result<Ring> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParameters(format!("p = {p} must be an odd prime")));
        }
        if ap % p as i64 != 0 {
            return Err(Error::InvalidParameters(format!("p = {p} must divide ap = {ap}")));
        }
        if prec < 1 {
            return Err(Error::InvalidParameters(format!("precision {prec} must be positive")));
        }
        if unram > 2 || cyc > 6 {
            return Err(Error::InvalidParameters("ring rank beyond desk scale".into()));
        }
        let degree = (p as usize).pow(unram);
        let unram_poly = if unram == 0 { Vec::new() } else { fp::first_irreducible(degree, p as u64) };
        let mut d = RingDescriptor { p, ap, prec, quad, cyc, unram, unram_poly, frob: Vec::new() };
        if unram > 0 {
            d.frob = super::frobenius::frobenius_table(&d)?;
        }
        Ok(Arc::new(d))
    }

    /// Same ring at another precision.
    pub fn at_prec(&self, prec: i64) -> Result<Ring> {
        Self::with_factors(self.p, self.ap, self.quad, self.cyc, self.unram, prec)
    }

    /// Same precision with the factors replaced.
    pub fn with(&self, quad: bool, cyc: u32, unram: u32) -> Result<Ring> {
        Self::with_factors(self.p, self.ap, quad, cyc, unram, self.prec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn ap(&self) -> i64 {
        self.ap
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn has_quad(&self) -> bool {
        self.quad
    }
    pub fn cyc_level(&self) -> u32 {
        self.cyc
    }
    pub fn unram_level(&self) -> u32 {
        self.unram
    }

    pub fn kind(&self) -> RingKind {
        match (self.quad, self.cyc, self.unram) {
            (false, 0, 0) => RingKind::Base,
            (true, 0, 0) => RingKind::Quad,
            (false, 0, m) => RingKind::Unram(m),
            (false, n, 0) => RingKind::Cyc(n),
            (_, n, m) => RingKind::Composite { n, m },
        }
    }

    pub(crate) fn key(&self) -> (u32, i64, i64, bool, u32, u32) {
        (self.p, self.ap, self.prec, self.quad, self.cyc, self.unram)
    }

    /// Same ring up to precision.
    pub fn same_shape(&self, o: &Self) -> bool {
        (self.p, self.ap, self.quad, self.cyc, self.unram) == (o.p, o.ap, o.quad, o.cyc, o.unram)
    }

    /// Rank of the quadratic factor.
    pub fn quad_rank(&self) -> usize {
        if self.quad {
            2
        } else {
            1
        }
    }

    /// Rank of the cyclotomic factor, `phi(p^n)`.
    pub fn cyc_rank(&self) -> usize {
        if self.cyc == 0 {
            1
        } else {
            (self.p as usize - 1) * (self.p as usize).pow(self.cyc - 1)
        }
    }

    /// Rank of the unramified factor, `p^m`.
    pub fn unram_rank(&self) -> usize {
        (self.p as usize).pow(self.unram)
    }

    pub fn rank(&self) -> usize {
        self.quad_rank() * self.cyc_rank() * self.unram_rank()
    }

    /// Coordinate index of `alpha^q zeta^c w^u`.
    pub fn index(&self, q: usize, c: usize, u: usize) -> usize {
        (q * self.cyc_rank() + c) * self.unram_rank() + u
    }

    /// Inverse of [`index`](Self::index).
    pub fn split_index(&self, i: usize) -> (usize, usize, usize) {
        let ur = self.unram_rank();
        let cr = self.cyc_rank();
        (i / (ur * cr), (i / ur) % cr, i % ur)
    }

    /// Monic defining polynomial of the unramified factor over F_p,
    /// lifted to integers in `[0, p)`.
    pub fn unram_poly(&self) -> &[u64] {
        &self.unram_poly
    }

    /// `frobenius(w^u)` as unramified coordinates, `u < p^m`.
    pub(crate) fn frob_table(&self) -> &[Vec<PadicNumber>] {
        &self.frob
    }

    /// Ramification index over Z_p.
    pub fn ramification(&self) -> usize {
        let c = self.cyc_rank();
        if self.quad && c == 1 {
            2
        } else {
            c
        }
    }

    /// Whether valuations are exact. A quadratic factor next to a cyclotomic
    /// one can split, so such products only get valuation floors.
    pub fn is_domain(&self) -> bool {
        !(self.quad && self.cyc > 0)
    }

    /// Residue-field cardinality exponent: the field has `p^(p^m)` elements.
    pub fn residue_degree(&self) -> usize {
        self.unram_rank()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
