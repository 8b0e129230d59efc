use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{ppow, Embedding, ExtensionElement, PadicNumber, Ring};

use super::algebra::Algebra;
use super::conv::{kron_mul, pack, product_frame, unpack};

/// Name of a series variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "X",
            Var::Y => "Y",
        }
    }
}

/// A power series modulo `(p^N, X^M)` with `M = coeffs.len()`.
#[derive(Clone)]
pub struct TruncSeries1 {
    ring: Ring,
    var: Var,
    coeffs: Vec<ExtensionElement>,
}

impl TruncSeries1 {
    pub fn zero(ring: &Ring, cap: usize) -> Self {
        TruncSeries1 { ring: ring.clone(), var: Var::X, coeffs: vec![ExtensionElement::zero(ring); cap] }
    }

    pub fn one(ring: &Ring, cap: usize) -> Self {
        Self::constant(&ExtensionElement::one(ring), cap)
    }

    pub fn constant(c: &ExtensionElement, cap: usize) -> Self {
        let mut s = Self::zero(c.ring(), cap);
        if cap > 0 {
            s.coeffs[0] = c.clone();
        }
        s
    }

    /// The variable itself.
    pub fn var(ring: &Ring, cap: usize) -> Self {
        Self::monomial(&ExtensionElement::one(ring), 1, cap)
    }

    pub fn monomial(c: &ExtensionElement, k: usize, cap: usize) -> Self {
        let mut s = Self::zero(c.ring(), cap);
        if k < cap {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn from_coeffs(ring: &Ring, coeffs: Vec<ExtensionElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.ring().same_shape(ring)) {
            return Err(Error::DescriptorMismatch);
        }
        let n = ring.prec();
        let coeffs = coeffs.into_iter().map(|c| c.with_prec(n)).collect();
        Ok(TruncSeries1 { ring: ring.clone(), var: Var::X, coeffs })
    }

    /// Series with small integer coefficients.
    pub fn from_i64s(ring: &Ring, xs: &[i64], cap: usize) -> Self {
        let mut s = Self::zero(ring, cap);
        for (i, &x) in xs.iter().enumerate().take(cap) {
            s.coeffs[i] = ExtensionElement::from_i64(ring, x);
        }
        s
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ExtensionElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &ExtensionElement {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: ExtensionElement) {
        self.coeffs[k] = c.with_prec(self.ring.prec());
    }

    /// Least coefficient precision.
    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(self.ring.prec())
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        self.map(|c| c.with_prec(prec))
    }

    /// Moves the series into the same ring at another precision.
    pub fn recast(&self, ring: &Ring) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.recast(ring)).collect::<Result<_>>()?;
        Ok(TruncSeries1 { ring: ring.clone(), var: self.var, coeffs })
    }

    /// Embeds the coefficients into a larger ring.
    pub fn embed(&self, e: &Embedding) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| e.apply(c)).collect::<Result<_>>()?;
        Ok(TruncSeries1 { ring: e.target().clone(), var: self.var, coeffs })
    }

    pub fn map(&self, f: impl Fn(&ExtensionElement) -> ExtensionElement) -> Self {
        TruncSeries1 { ring: self.ring.clone(), var: self.var, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Truncates or zero-pads to a new cap.
    pub fn with_cap(&self, cap: usize) -> Self {
        let mut coeffs: Vec<ExtensionElement> = self.coeffs.iter().take(cap).cloned().collect();
        coeffs.resize(cap, ExtensionElement::zero(&self.ring));
        TruncSeries1 { ring: self.ring.clone(), var: self.var, coeffs }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if !self.ring.same_shape(&o.ring) {
            return Err(Error::DescriptorMismatch);
        }
        if self.cap() != o.cap() {
            return Err(Error::CapMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add(o))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.sub(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    fn zip(&self, o: &Self, f: impl Fn(&ExtensionElement, &ExtensionElement) -> ExtensionElement) -> Self {
        assert_eq!(self.cap(), o.cap(), "series caps differ");
        TruncSeries1 {
            ring: self.ring.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &ExtensionElement) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale_padic(&self, c: &PadicNumber) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.map(|x| x.scale_i64(k))
    }

    /// Multiplication by `X^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let cap = self.cap();
        let mut out = Self::zero(&self.ring, cap).with_var(self.var);
        for i in 0..cap.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Drops the first `k` coefficients (division by `X^k`), padding with
    /// zeros known to the series precision.
    pub fn shift_down(&self, k: usize) -> Self {
        let cap = self.cap();
        let prec = self.prec();
        let mut coeffs: Vec<ExtensionElement> = self.coeffs.iter().skip(k).cloned().collect();
        coeffs.resize(cap, ExtensionElement::zero_at(&self.ring, prec));
        TruncSeries1 { ring: self.ring.clone(), var: self.var, coeffs }
    }

    pub fn derivative(&self) -> Self {
        let cap = self.cap();
        let mut out = Self::zero(&self.ring, cap).with_var(self.var);
        for k in 1..cap {
            out.coeffs[k - 1] = self.coeffs[k].scale_i64(k as i64);
        }
        if cap > 0 {
            out.coeffs[cap - 1] = ExtensionElement::zero_at(&self.ring, self.prec());
        }
        out
    }

    /// Index of the first coefficient that is nonzero at precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Inverse of a series with invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let cap = self.cap();
        let c0 = self.coeffs.first().ok_or(Error::CapMismatch)?;
        let c0i = c0.inv()?;
        let mut out = Self::zero(&self.ring, cap).with_var(self.var);
        out.coeffs[0] = c0i.clone();
        for k in 1..cap {
            let mut acc = ExtensionElement::zero(&self.ring);
            for i in 1..=k {
                if !self.coeffs[i].is_exact_zero() {
                    acc = acc.add(&self.coeffs[i].mul(&out.coeffs[k - i]));
                }
            }
            out.coeffs[k] = acc.mul(&c0i).neg();
        }
        Ok(out)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(&o.inv()?))
    }

    /// `self(g)` for `g` without constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        if !g.coeffs.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::NotInDisk);
        }
        let cap = self.cap();
        let mut acc = Self::zero(&self.ring, cap).with_var(self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Compositional inverse of a series `a1 X + ...` with `a1` a unit.
    pub fn revert(&self) -> Result<Self> {
        let cap = self.cap();
        if cap < 2 || !self.coeffs[0].is_zero() {
            return Err(Error::NotReversible);
        }
        let a1 = &self.coeffs[1];
        if a1.valuation_floor() != crate::padic::Valuation::from_integer(0) || a1.is_zero() {
            return Err(Error::NotReversible);
        }
        let x = Self::var(&self.ring, cap).with_var(self.var);
        let mut g = x.scale(&a1.inv()?);
        let df = self.derivative();
        let mut reach = 2usize;
        loop {
            let resid = self.compose(&g)?.sub(&x);
            if resid.is_zero() {
                break;
            }
            if reach > 2 * cap + 2 {
                return Err(Error::NonConvergent);
            }
            g = g.sub(&resid.div(&df.compose(&g)?)?);
            reach *= 2;
        }
        Ok(g)
    }

    /// Sum of coefficient products `self(x)` in a finite form, no tail.
    pub fn horner(&self, x: &ExtensionElement) -> ExtensionElement {
        let mut acc = ExtensionElement::zero(x.ring());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Least coordinate valuation among the coefficients.
    pub fn coord_valuation(&self) -> i64 {
        self.coeffs.iter().map(|c| c.coord_valuation()).min().unwrap_or(i64::MAX)
    }
}

impl Algebra for TruncSeries1 {
    fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cap(), o.cap(), "series caps differ");
        let cap = self.cap();
        let ring = &self.ring;
        let (a, b) = match (pack(&self.coeffs), pack(&o.coeffs)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Self::zero(ring, cap).with_var(self.var),
        };
        let (shift, prec) = product_frame(ring, &a, &b);
        if prec <= shift {
            let coeffs = vec![ExtensionElement::zero_at(ring, prec); cap];
            return TruncSeries1 { ring: ring.clone(), var: self.var, coeffs };
        }
        let m = BigInt::from(ppow(ring.p(), prec - shift));
        let out = kron_mul(ring, &a, &b, &[cap], &m);
        TruncSeries1 { ring: ring.clone(), var: self.var, coeffs: unpack(ring, shift, &out, prec) }
    }

    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ring, self.cap()).with_var(self.var)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ring, self.cap()).with_var(self.var)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for TruncSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}*{}^{}", c, self.var.name(), k)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var.name(), self.cap())
    }
}

/// Equality at precision: same ring shape and a difference that vanishes
/// at the working precision.
impl PartialEq for TruncSeries1 {
    fn eq(&self, o: &Self) -> bool {
        self.ring.same_shape(&o.ring) && self.cap() == o.cap() && self.coeffs == o.coeffs
    }
}
