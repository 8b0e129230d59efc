use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{ppow, ExtensionElement, Ring};

use super::algebra::Algebra;
use super::conv::{kron_mul, pack, product_frame, unpack};
use super::trunc1::{TruncSeries1, Var};

/// A power series modulo `(p^N, X^MX, Y^MY)`, stored densely with the
/// coefficient of `X^i Y^j` at `i * MY + j`.
#[derive(Clone)]
pub struct TruncSeries2 {
    ring: Ring,
    caps: (usize, usize),
    coeffs: Vec<ExtensionElement>,
}

impl TruncSeries2 {
    pub fn zero(ring: &Ring, caps: (usize, usize)) -> Self {
        TruncSeries2 { ring: ring.clone(), caps, coeffs: vec![ExtensionElement::zero(ring); caps.0 * caps.1] }
    }

    pub fn one(ring: &Ring, caps: (usize, usize)) -> Self {
        let mut s = Self::zero(ring, caps);
        if caps.0 * caps.1 > 0 {
            s.coeffs[0] = ExtensionElement::one(ring);
        }
        s
    }

    pub fn from_coeffs(ring: &Ring, caps: (usize, usize), coeffs: Vec<ExtensionElement>) -> Result<Self> {
        if coeffs.len() != caps.0 * caps.1 {
            return Err(Error::CapMismatch);
        }
        if coeffs.iter().any(|c| !c.ring().same_shape(ring)) {
            return Err(Error::DescriptorMismatch);
        }
        let n = ring.prec();
        Ok(TruncSeries2 { ring: ring.clone(), caps, coeffs: coeffs.into_iter().map(|c| c.with_prec(n)).collect() })
    }

    /// Series with small integer coefficients given as `(i, j, value)`.
    pub fn from_terms(ring: &Ring, caps: (usize, usize), terms: &[(usize, usize, i64)]) -> Self {
        let mut s = Self::zero(ring, caps);
        for &(i, j, v) in terms {
            if i < caps.0 && j < caps.1 {
                let c = s.coeff(i, j).add(&ExtensionElement::from_i64(ring, v));
                s.set(i, j, c);
            }
        }
        s
    }

    /// A one-variable series read in `X` (or in `Y`).
    pub fn from_series(s: &TruncSeries1, var: Var, caps: (usize, usize)) -> Self {
        let mut out = Self::zero(s.ring(), caps);
        for (k, c) in s.coeffs().iter().enumerate() {
            match var {
                Var::X if k < caps.0 => out.set(k, 0, c.clone()),
                Var::Y if k < caps.1 => out.set(0, k, c.clone()),
                _ => {}
            }
        }
        out
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn caps(&self) -> (usize, usize) {
        self.caps
    }

    pub fn coeffs(&self) -> &[ExtensionElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &ExtensionElement {
        &self.coeffs[i * self.caps.1 + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: ExtensionElement) {
        let my = self.caps.1;
        self.coeffs[i * my + j] = c.with_prec(self.ring.prec());
    }

    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(self.ring.prec())
    }

    pub fn map(&self, f: impl Fn(&ExtensionElement) -> ExtensionElement) -> Self {
        TruncSeries2 { ring: self.ring.clone(), caps: self.caps, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn recast(&self, ring: &Ring) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.recast(ring)).collect::<Result<_>>()?;
        Ok(TruncSeries2 { ring: ring.clone(), caps: self.caps, coeffs })
    }

    /// The series in `X` multiplying `Y^j`.
    pub fn y_coeff(&self, j: usize) -> TruncSeries1 {
        let c = (0..self.caps.0).map(|i| self.coeff(i, j).clone()).collect();
        TruncSeries1::from_coeffs(&self.ring, c).expect("shared ring")
    }

    /// The series in `Y` multiplying `X^i`.
    pub fn x_coeff(&self, i: usize) -> TruncSeries1 {
        let c = (0..self.caps.1).map(|j| self.coeff(i, j).clone()).collect();
        TruncSeries1::from_coeffs(&self.ring, c).expect("shared ring").with_var(Var::Y)
    }

    /// Reassembles from the series in `X` multiplying each `Y^j`.
    pub fn from_y_coeffs(ring: &Ring, cols: &[TruncSeries1]) -> Result<Self> {
        let my = cols.len();
        let mx = cols.first().map_or(0, |c| c.cap());
        let mut out = Self::zero(ring, (mx, my));
        for (j, col) in cols.iter().enumerate() {
            if col.cap() != mx {
                return Err(Error::CapMismatch);
            }
            for i in 0..mx {
                out.set(i, j, col.coeff(i).clone());
            }
        }
        Ok(out)
    }

    /// Reassembles from the series in `Y` multiplying each `X^i`.
    pub fn from_x_coeffs(ring: &Ring, rows: &[TruncSeries1]) -> Result<Self> {
        let mx = rows.len();
        let my = rows.first().map_or(0, |c| c.cap());
        let mut out = Self::zero(ring, (mx, my));
        for (i, row) in rows.iter().enumerate() {
            if row.cap() != my {
                return Err(Error::CapMismatch);
            }
            for j in 0..my {
                out.set(i, j, row.coeff(j).clone());
            }
        }
        Ok(out)
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn swap_vars(&self) -> Self {
        let (mx, my) = self.caps;
        let mut out = Self::zero(&self.ring, (my, mx));
        for i in 0..mx {
            for j in 0..my {
                out.set(j, i, self.coeff(i, j).clone());
            }
        }
        out
    }

    /// Product with a series in `X` alone.
    pub fn mul_x(&self, s: &TruncSeries1) -> Result<Self> {
        if s.cap() != self.caps.0 {
            return Err(Error::CapMismatch);
        }
        let cols: Vec<TruncSeries1> = (0..self.caps.1).map(|j| self.y_coeff(j).mul(s)).collect();
        Self::from_y_coeffs(&self.ring, &cols)
    }

    /// Product with a series in `Y` alone.
    pub fn mul_y(&self, s: &TruncSeries1) -> Result<Self> {
        if s.cap() != self.caps.1 {
            return Err(Error::CapMismatch);
        }
        let s = s.clone().with_var(Var::Y);
        let rows: Vec<TruncSeries1> = (0..self.caps.0).map(|i| self.x_coeff(i).mul(&s)).collect();
        Self::from_x_coeffs(&self.ring, &rows)
    }

    /// `f(X, X)`, with cap `min(MX, MY)`.
    pub fn diagonal(&self) -> TruncSeries1 {
        let (mx, my) = self.caps;
        let cap = mx.min(my);
        let mut out = TruncSeries1::zero(&self.ring, cap);
        for k in 0..cap {
            let mut acc = ExtensionElement::zero(&self.ring);
            for i in 0..=k {
                acc = acc.add(self.coeff(i, k - i));
            }
            out.set_coeff(k, acc);
        }
        out
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.caps != o.caps {
            return Err(Error::CapMismatch);
        }
        if !self.ring.same_shape(&o.ring) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(self.mul(o))
    }

    /// Truncates or pads to new caps.
    pub fn with_caps(&self, caps: (usize, usize)) -> Self {
        let mut out = Self::zero(&self.ring, caps);
        for i in 0..caps.0.min(self.caps.0) {
            for j in 0..caps.1.min(self.caps.1) {
                out.set(i, j, self.coeff(i, j).clone());
            }
        }
        out
    }

    pub fn coord_valuation(&self) -> i64 {
        self.coeffs.iter().map(|c| c.coord_valuation()).min().unwrap_or(i64::MAX)
    }
}

impl Algebra for TruncSeries2 {
    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.caps, o.caps, "series caps differ");
        TruncSeries2 {
            ring: self.ring.clone(),
            caps: self.caps,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.caps, o.caps, "series caps differ");
        TruncSeries2 {
            ring: self.ring.clone(),
            caps: self.caps,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.caps, o.caps, "series caps differ");
        let (mx, my) = self.caps;
        let ring = &self.ring;
        let (a, b) = match (pack(&self.coeffs), pack(&o.coeffs)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Self::zero(ring, self.caps),
        };
        let (shift, prec) = product_frame(ring, &a, &b);
        if prec <= shift {
            return TruncSeries2 { ring: ring.clone(), caps: self.caps, coeffs: vec![ExtensionElement::zero_at(ring, prec); mx * my] };
        }
        let m = BigInt::from(ppow(ring.p(), prec - shift));
        let out = kron_mul(ring, &a, &b, &[mx, my], &m);
        TruncSeries2 { ring: ring.clone(), caps: self.caps, coeffs: unpack(ring, shift, &out, prec) }
    }

    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ring, self.caps)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ring, self.caps)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Debug for TruncSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mx, my) = self.caps;
        let mut first = true;
        for i in 0..mx {
            for j in 0..my {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{:?}*X^{}*Y^{}", c, i, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Equality at precision: same ring shape and a difference that vanishes
/// at the working precision.
impl PartialEq for TruncSeries2 {
    fn eq(&self, o: &Self) -> bool {
        self.ring.same_shape(&o.ring) && self.caps == o.caps && self.coeffs == o.coeffs
    }
}
