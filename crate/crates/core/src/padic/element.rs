use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::fp;
use super::number::{ppow, split_p, PadicNumber};
use super::ring::Ring;
use super::Valuation;

/// An element of a coefficient ring, as coordinates in the tensor basis
/// `alpha^q zeta^c w^u`.
#[derive(Clone)]
pub struct ExtensionElement {
    ring: Ring,
    coords: Vec<PadicNumber>,
}

/// Integer image `p^shift * ints` of an element, valid modulo `p^prec`.
pub(crate) struct Scaled {
    pub shift: i64,
    pub ints: Vec<BigInt>,
    pub prec: i64,
}

impl ExtensionElement {
    pub fn zero(ring: &Ring) -> Self {
        let p = ring.p();
        ExtensionElement { ring: ring.clone(), coords: vec![PadicNumber::exact_zero(p); ring.rank()] }
    }

    pub fn zero_at(ring: &Ring, prec: i64) -> Self {
        let p = ring.p();
        let prec = min(prec, ring.prec());
        ExtensionElement { ring: ring.clone(), coords: vec![PadicNumber::zero_at(p, prec); ring.rank()] }
    }

    pub fn from_padic(ring: &Ring, x: &PadicNumber) -> Self {
        let mut e = Self::zero(ring);
        e.coords[0] = x.with_prec(ring.prec());
        e
    }

    pub fn from_i64(ring: &Ring, x: i64) -> Self {
        if x == 0 {
            return Self::zero(ring);
        }
        Self::from_padic(ring, &PadicNumber::from_i64(ring.p(), x, ring.prec()))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn from_coords(ring: &Ring, coords: Vec<PadicNumber>) -> Result<Self> {
        if coords.len() != ring.rank() {
            return Err(Error::DescriptorMismatch);
        }
        let n = ring.prec();
        let coords = coords.into_iter().map(|c| c.with_prec(n)).collect();
        Ok(ExtensionElement { ring: ring.clone(), coords })
    }

    /// Basis element `alpha^q zeta^c w^u`.
    pub fn basis(ring: &Ring, q: usize, c: usize, u: usize) -> Self {
        let mut e = Self::zero(ring);
        e.coords[ring.index(q, c, u)] = PadicNumber::one(ring.p(), ring.prec());
        e
    }

    /// The root `alpha` of `Y^2 - ap Y + p`.
    pub fn alpha(ring: &Ring) -> Result<Self> {
        if !ring.has_quad() {
            return Err(Error::UnsupportedRing("no quadratic factor"));
        }
        Ok(Self::basis(ring, 1, 0, 0))
    }

    /// The conjugate root `beta = ap - alpha`.
    pub fn beta(ring: &Ring) -> Result<Self> {
        Ok(Self::from_i64(ring, ring.ap()).sub(&Self::alpha(ring)?))
    }

    /// The canonical generator of the cyclotomic factor.
    pub fn zeta(ring: &Ring) -> Result<Self> {
        if ring.cyc_level() == 0 {
            return Err(Error::UnsupportedRing("no cyclotomic factor"));
        }
        Ok(Self::basis(ring, 0, 1, 0))
    }

    /// `zeta^e` for the canonical generator, any integer exponent.
    pub fn zeta_pow(ring: &Ring, e: i64) -> Result<Self> {
        let order = (ring.p() as i64).pow(ring.cyc_level());
        let e = e.mod_floor(&order) as usize;
        let mut t = vec![BigInt::zero(); ring.quad_rank() * order as usize * ring.unram_rank()];
        t[e * ring.unram_rank()] = BigInt::from(1);
        let ints = reduce_full(ring, t, order as usize, None);
        Ok(Self::from_ints(ring, 0, &ints, ring.prec()))
    }

    /// The generator `w` of the unramified factor.
    pub fn unram_gen(ring: &Ring) -> Result<Self> {
        if ring.unram_level() == 0 {
            return Err(Error::UnsupportedRing("no unramified factor"));
        }
        Ok(Self::basis(ring, 0, 0, 1))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[PadicNumber] {
        &self.coords
    }

    pub fn coord(&self, q: usize, c: usize, u: usize) -> &PadicNumber {
        &self.coords[self.ring.index(q, c, u)]
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    /// Absolute precision: the least coordinate precision.
    pub fn prec(&self) -> i64 {
        self.coords.iter().map(|c| c.prec_or_max()).min().unwrap_or(i64::MAX).min(self.ring.prec())
    }

    /// Raw precision, `i64::MAX` when every coordinate is exact zero.
    fn raw_prec(&self) -> i64 {
        self.coords.iter().map(|c| c.prec_or_max()).min().unwrap_or(i64::MAX)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_exact_zero())
    }

    /// Least coordinate valuation (precision for zero coordinates).
    pub fn coord_valuation(&self) -> i64 {
        self.coords.iter().map(|c| c.valuation_floor()).min().unwrap_or(i64::MAX)
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        ExtensionElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.with_prec(prec)).collect(),
        }
    }

    /// Moves the element to the same ring at another precision.
    pub fn recast(&self, ring: &Ring) -> Result<Self> {
        if !self.ring.same_shape(ring) {
            return Err(Error::DescriptorMismatch);
        }
        Self::from_coords(ring, self.coords.clone())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ring.same_shape(&o.ring) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&PadicNumber, &PadicNumber) -> PadicNumber) -> Self {
        assert!(self.ring.same_shape(&o.ring), "operands live in different rings");
        let n = self.ring.prec();
        ExtensionElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| f(a, b).with_prec(n)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        ExtensionElement { ring: self.ring.clone(), coords: self.coords.iter().map(|c| c.neg()).collect() }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    /// Multiplication by a scalar of Q_p.
    pub fn scale(&self, k: &PadicNumber) -> Self {
        let n = self.ring.prec();
        ExtensionElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.mul(k).with_prec(n)).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        let n = self.ring.prec();
        ExtensionElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.mul_i64(k).with_prec(n)).collect(),
        }
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.ring.prec();
        ExtensionElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.shift(k).with_prec(n)).collect(),
        }
    }

    pub(crate) fn scaled(&self) -> Option<Scaled> {
        if self.is_exact_zero() {
            return None;
        }
        let p = self.p();
        let shift = self.coord_valuation();
        let prec = self.raw_prec();
        let ints = self
            .coords
            .iter()
            .map(|c| match c.valuation() {
                Some(v) => {
                    let (n, _) = c.shift(-v).to_scaled();
                    n * BigInt::from(ppow(p, v - shift))
                }
                None => BigInt::zero(),
            })
            .collect();
        Some(Scaled { shift, ints, prec })
    }

    pub(crate) fn from_ints(ring: &Ring, shift: i64, ints: &[BigInt], prec: i64) -> Self {
        let p = ring.p();
        let prec = min(prec, ring.prec());
        let coords = ints.iter().map(|n| PadicNumber::from_scaled(p, shift, n, prec)).collect();
        ExtensionElement { ring: ring.clone(), coords }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert!(self.ring.same_shape(&o.ring), "operands live in different rings");
        if self.ring.rank() == 1 {
            let c = self.coords[0].mul(&o.coords[0]).with_prec(self.ring.prec());
            return ExtensionElement { ring: self.ring.clone(), coords: vec![c] };
        }
        let (a, b) = match (self.scaled(), o.scaled()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Self::zero(&self.ring),
        };
        let prec = min(min(a.shift.saturating_add(b.prec), b.shift.saturating_add(a.prec)), self.ring.prec());
        let shift = a.shift + b.shift;
        if prec <= shift {
            return Self::zero_at(&self.ring, prec);
        }
        let modulus = BigInt::from(ppow(self.p(), prec - shift));
        let ints = mul_ints(&self.ring, &a.ints, &b.ints, Some(&modulus));
        Self::from_ints(&self.ring, shift, &ints, prec)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut started = false;
        while e > 0 {
            if e & 1 == 1 {
                acc = if started { acc.mul(&base) } else { base.clone() };
                started = true;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// True when `self - o` vanishes at the working precision of both.
    pub fn agrees(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    /// True when `self - o` vanishes modulo `p^k`.
    pub fn eq_mod(&self, o: &Self, k: i64) -> bool {
        self.sub(o).coords.iter().all(|c| c.valuation_floor() >= k)
    }

    /// Coordinates with respect to `alpha^q pi^i w^u`, `pi = zeta - 1`.
    pub(crate) fn pi_coords(&self) -> Option<Scaled> {
        let s = self.scaled()?;
        let r = &self.ring;
        let (qr, cr, ur) = (r.quad_rank(), r.cyc_rank(), r.unram_rank());
        let binom = binomials(cr);
        let mut out = vec![BigInt::zero(); s.ints.len()];
        for q in 0..qr {
            for u in 0..ur {
                for c in 0..cr {
                    let x = &s.ints[r.index(q, c, u)];
                    if x.is_zero() {
                        continue;
                    }
                    for (i, b) in binom[c].iter().enumerate() {
                        out[r.index(q, i, u)] += x * b;
                    }
                }
            }
        }
        Some(Scaled { shift: s.shift, ints: out, prec: s.prec })
    }

    /// Valuation normalized by `v(p) = 1`.
    ///
    /// Exact on domains; on a ring carrying both a quadratic and a
    /// cyclotomic factor this is [`UnsupportedRing`](Error::UnsupportedRing).
    pub fn valuation(&self) -> Result<Valuation> {
        if !self.ring.is_domain() {
            return Err(Error::UnsupportedRing("valuation on a split product"));
        }
        let (v, determined) = self.valuation_bound();
        if determined {
            Ok(v)
        } else {
            Err(Error::IndistinguishableFromZero { lower_bound: v })
        }
    }

    /// Lower bound for the valuation, read off the integral basis
    /// `alpha^q pi^i w^u`; exact on domains.
    pub fn valuation_floor(&self) -> Valuation {
        self.valuation_bound().0
    }

    fn valuation_bound(&self) -> (Valuation, bool) {
        let prec = self.prec();
        let s = match self.pi_coords() {
            Some(s) => s,
            None => return (Valuation::from_integer(i64::MAX / 4), false),
        };
        let r = &self.ring;
        let p = r.p();
        let phi = r.cyc_rank() as i64;
        let rel = prec - s.shift;
        let m = BigInt::from(ppow(p, rel.max(0)));
        let mut best: Option<Valuation> = None;
        for (idx, x) in s.ints.iter().enumerate() {
            let x = x.mod_floor(&m);
            if x.is_zero() {
                continue;
            }
            let (k, _) = split_p(p, x.magnitude());
            let (q, i, _) = r.split_index(idx);
            let v = Valuation::from_integer(s.shift + k)
                + Valuation::new(q as i64, 2)
                + Valuation::new(i as i64, phi);
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        match best {
            Some(v) => (v, true),
            None => (Valuation::from_integer(prec), false),
        }
    }

    /// Reduction modulo p of `p^(-coord_valuation) * self`, with that shift.
    fn unit_part_mod_p(&self) -> Option<(i64, Vec<u64>)> {
        let s = self.scaled()?;
        if s.prec <= s.shift {
            return None;
        }
        let p = BigInt::from(self.p());
        let v = s.ints.iter().map(|x| x.mod_floor(&p).try_into().unwrap_or(0u64)).collect();
        Some((s.shift, v))
    }

    /// Solves `self * z = 1` modulo p for an element with unit coordinates.
    fn inverse_mod_p(&self, residues: &[u64]) -> Option<Vec<u64>> {
        let r = &self.ring;
        let n = r.rank();
        let p = r.p() as u64;
        let y: Vec<BigInt> = residues.iter().map(|&x| BigInt::from(x)).collect();
        let pm = BigInt::from(p);
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::from(1);
            let prod = mul_ints(r, &y, &e, Some(&pm));
            cols.push(prod.iter().map(|x| x.mod_floor(&pm).try_into().unwrap_or(0u64)).collect::<Vec<u64>>());
        }
        let a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        let mut rhs = vec![0u64; n];
        rhs[0] = 1;
        fp::solve(&a, &rhs, p)
    }

    /// Inverse of an element whose reduction modulo p is a unit, after
    /// removing its p-content.
    fn inv_unit_content(&self) -> Option<Self> {
        let (shift, res) = self.unit_part_mod_p()?;
        let z0 = self.inverse_mod_p(&res)?;
        let y = self.shift(-shift);
        let prec = y.prec();
        let r = &self.ring;
        let ints: Vec<BigInt> = z0.into_iter().map(BigInt::from).collect();
        let mut z = Self::from_ints(r, 0, &ints, prec);
        let two = Self::from_i64(r, 2);
        let mut k = 1i64;
        while k < 2 * prec.max(1) {
            z = z.mul(&two.sub(&y.mul(&z)));
            k *= 2;
        }
        Some(z.shift(-shift))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.ring.rank() == 1 {
            let c = self.coords[0].inv()?.with_prec(self.ring.prec());
            return Ok(ExtensionElement { ring: self.ring.clone(), coords: vec![c] });
        }
        if self.is_zero() {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        if let Some(z) = self.inv_unit_content() {
            return Ok(z);
        }
        let e = self.ring.ramification() as u64;
        if e > 1 {
            let y_e1 = self.pow(e - 1);
            let y_e = y_e1.mul(self);
            if let Some(z) = y_e.inv_unit_content() {
                return Ok(y_e1.mul(&z));
            }
        }
        Err(Error::DivisionByZeroAtPrecision)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(&o.inv()?))
    }

    /// Coordinates as integers modulo `p^k`, when all valuations are
    /// nonnegative and precision reaches `k`.
    pub fn residues(&self, k: i64) -> Option<Vec<BigUint>> {
        self.coords.iter().map(|c| c.residue(k)).collect()
    }
}

/// Ring product of integer coordinate vectors, reduced modulo `modulus`.
pub(crate) fn mul_ints(ring: &Ring, a: &[BigInt], b: &[BigInt], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let (qr, cr, ur) = (ring.quad_rank(), ring.cyc_rank(), ring.unram_rank());
    let (qw, cw, uw) = (2 * qr - 1, 2 * cr - 1, 2 * ur - 1);
    let mut t = vec![BigInt::zero(); qw * cw * uw];
    let at = |q: usize, c: usize, u: usize| (q * cw + c) * uw + u;
    let nz_b: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (qa, ca, ua) = ring.split_index(i);
        for &(j, y) in &nz_b {
            let (qb, cb, ub) = ring.split_index(j);
            t[at(qa + qb, ca + cb, ua + ub)] += x * y;
        }
    }
    reduce_raw(ring, t, modulus)
}

/// Canonical coordinates of an unreduced product laid out with widths
/// `(2Q-1, 2C-1, 2U-1)`.
pub(crate) fn reduce_raw(ring: &Ring, t: Vec<BigInt>, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let (qw, cw) = (2 * ring.quad_rank() - 1, 2 * ring.cyc_rank() - 1);
    let mut out = reduce_unram(ring, t, qw, cw);
    out = reduce_cyc_quad(ring, out, cw);
    if let Some(m) = modulus {
        for x in out.iter_mut() {
            *x = x.mod_floor(m);
        }
    }
    out
}

/// Reduces an array with unram width `2U-1` down to width `U`.
fn reduce_unram(ring: &Ring, mut t: Vec<BigInt>, qw: usize, cw: usize) -> Vec<BigInt> {
    let ur = ring.unram_rank();
    let uw = t.len() / (qw * cw);
    if uw == ur {
        return t;
    }
    let poly: Vec<BigInt> = ring.unram_poly().iter().map(|&c| BigInt::from(c)).collect();
    let mut out = Vec::with_capacity(qw * cw * ur);
    for blk in 0..qw * cw {
        let row = &mut t[blk * uw..(blk + 1) * uw];
        for d in (ur..uw).rev() {
            if row[d].is_zero() {
                continue;
            }
            let c = core::mem::take(&mut row[d]);
            for (i, pi) in poly.iter().take(ur).enumerate() {
                if !pi.is_zero() {
                    row[d - ur + i] -= &c * pi;
                }
            }
        }
        out.extend(row[..ur].iter().cloned());
    }
    out
}

/// Reduces the cyclotomic exponent range `cw` and the quadratic degree.
fn reduce_cyc_quad(ring: &Ring, mut t: Vec<BigInt>, cw: usize) -> Vec<BigInt> {
    let (qr, cr, ur) = (ring.quad_rank(), ring.cyc_rank(), ring.unram_rank());
    let qw = t.len() / (cw * ur);
    let at = |q: usize, c: usize, u: usize| (q * cw + c) * ur + u;
    if ring.cyc_level() > 0 && cw > cr {
        let p = ring.p() as usize;
        let stride = p.pow(ring.cyc_level() - 1);
        for q in 0..qw {
            for d in (cr..cw).rev() {
                for u in 0..ur {
                    let c = core::mem::take(&mut t[at(q, d, u)]);
                    if c.is_zero() {
                        continue;
                    }
                    for i in 0..p - 1 {
                        t[at(q, d - cr + i * stride, u)] -= &c;
                    }
                }
            }
        }
    }
    if qw > qr {
        let ap = BigInt::from(ring.ap());
        let p = BigInt::from(ring.p());
        for c in 0..cr {
            for u in 0..ur {
                let x = core::mem::take(&mut t[at(2, c, u)]);
                if x.is_zero() {
                    continue;
                }
                t[at(1, c, u)] += &x * &ap;
                t[at(0, c, u)] -= &x * &p;
            }
        }
    }
    let mut out = Vec::with_capacity(qr * cr * ur);
    for q in 0..qr {
        for c in 0..cr {
            for u in 0..ur {
                out.push(core::mem::take(&mut t[at(q, c, u)]));
            }
        }
    }
    out
}

/// Reduces a vector indexed by `(q, c, u)` with `c < width` (any width) to
/// canonical coordinates.
pub(crate) fn reduce_full(ring: &Ring, t: Vec<BigInt>, width: usize, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let cr = ring.cyc_rank();
    let ur = ring.unram_rank();
    let qr = ring.quad_rank();
    let mut t = t;
    let mut width = width;
    if width < cr {
        let mut wide = vec![BigInt::zero(); qr * cr * ur];
        for q in 0..qr {
            for c in 0..width {
                for u in 0..ur {
                    wide[(q * cr + c) * ur + u] = core::mem::take(&mut t[(q * width + c) * ur + u]);
                }
            }
        }
        t = wide;
        width = cr;
    }
    let mut out = if ring.cyc_level() == 0 && width > 1 {
        let mut acc = vec![BigInt::zero(); qr * ur];
        for q in 0..qr {
            for c in 0..width {
                for u in 0..ur {
                    acc[q * ur + u] += &t[(q * width + c) * ur + u];
                }
            }
        }
        acc
    } else {
        reduce_cyc_quad(ring, t, width)
    };
    if let Some(m) = modulus {
        for x in out.iter_mut() {
            *x = x.mod_floor(m);
        }
    }
    out
}

/// Rows `binom[c][i] = C(c, i)` for `c < n`.
fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut row = vec![BigInt::from(1); c + 1];
        for i in 1..c {
            row[i] = &rows[c - 1][i - 1] + &rows[c - 1][i];
        }
        rows.push(row);
    }
    rows
}

impl fmt::Debug for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl fmt::Display for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Equality at precision: same ring shape and a difference that vanishes
/// at the working precision.
impl PartialEq for ExtensionElement {
    fn eq(&self, o: &Self) -> bool {
        self.ring.same_shape(&o.ring) && self.agrees(o)
    }
}
