use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{ppow, ExtensionElement, Ring};

use super::algebra::Algebra;
use super::conv::{is_zero_vec, mul_acc, pack, product_frame, reduce_mod, unpack};

/// An element of `R[X]/((1+X)^(p^n) - 1)` in the basis of powers of `1+X`.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    ring: Ring,
    level: u32,
    coeffs: Vec<ExtensionElement>,
}

impl GroupRingElement {
    pub fn zero(ring: &Ring, level: u32) -> Self {
        let len = (ring.p() as usize).pow(level);
        GroupRingElement { ring: ring.clone(), level, coeffs: vec![ExtensionElement::zero(ring); len] }
    }

    pub fn one(ring: &Ring, level: u32) -> Self {
        let mut e = Self::zero(ring, level);
        e.coeffs[0] = ExtensionElement::one(ring);
        e
    }

    /// The group element `(1+X)^k`.
    pub fn group_element(ring: &Ring, level: u32, k: usize) -> Self {
        let mut e = Self::zero(ring, level);
        let len = e.coeffs.len();
        e.coeffs[k % len] = ExtensionElement::one(ring);
        e
    }

    pub fn from_coeffs(ring: &Ring, level: u32, coeffs: Vec<ExtensionElement>) -> Result<Self> {
        if coeffs.len() != (ring.p() as usize).pow(level) {
            return Err(Error::CapMismatch);
        }
        if coeffs.iter().any(|c| !c.ring().same_shape(ring)) {
            return Err(Error::DescriptorMismatch);
        }
        let n = ring.prec();
        Ok(GroupRingElement { ring: ring.clone(), level, coeffs: coeffs.into_iter().map(|c| c.with_prec(n)).collect() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[ExtensionElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &ExtensionElement {
        &self.coeffs[k]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(self.ring.prec())
    }

    pub fn map(&self, f: impl Fn(&ExtensionElement) -> ExtensionElement) -> Self {
        GroupRingElement { ring: self.ring.clone(), level: self.level, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &ExtensionElement) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.map(|x| x.scale_i64(k))
    }

    /// Moves coefficients into another ring through `f`.
    pub fn map_ring(&self, ring: &Ring, f: impl Fn(&ExtensionElement) -> Result<ExtensionElement>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(ring, self.level, coeffs)
    }

    /// The projection to level `n - 1`.
    pub fn project_pi(&self) -> Result<Self> {
        if self.level == 0 {
            return Err(Error::LevelZero);
        }
        let mut out = Self::zero(&self.ring, self.level - 1);
        let len = out.coeffs.len();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[k % len] = out.coeffs[k % len].add(c);
        }
        Ok(out)
    }

    /// Lift to level `n + 1` followed by multiplication with the norm
    /// element `sum_j (1+X)^(j p^n)`.
    pub fn lift_nu(&self) -> Self {
        let mut out = Self::zero(&self.ring, self.level + 1);
        let len = self.coeffs.len();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            *c = self.coeffs[k % len].clone();
        }
        out
    }

    /// The norm element at this level, `sum_j (1+X)^(j p^(n-1))`.
    pub fn norm_element(ring: &Ring, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::LevelZero);
        }
        Ok(Self::one(ring, level - 1).lift_nu())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.level != o.level {
            return Err(Error::CapMismatch);
        }
        if !self.ring.same_shape(&o.ring) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(self.mul(o))
    }

    pub fn coord_valuation(&self) -> i64 {
        self.coeffs.iter().map(|c| c.coord_valuation()).min().unwrap_or(i64::MAX)
    }
}

impl Algebra for GroupRingElement {
    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.level, o.level, "levels differ");
        GroupRingElement {
            ring: self.ring.clone(),
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.level, o.level, "levels differ");
        GroupRingElement {
            ring: self.ring.clone(),
            level: self.level,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.level, o.level, "levels differ");
        let ring = &self.ring;
        let len = self.coeffs.len();
        let (a, b) = match (pack(&self.coeffs), pack(&o.coeffs)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Self::zero(ring, self.level),
        };
        let (shift, prec) = product_frame(ring, &a, &b);
        if prec <= shift {
            return GroupRingElement { ring: ring.clone(), level: self.level, coeffs: vec![ExtensionElement::zero_at(ring, prec); len] };
        }
        let m = BigInt::from(ppow(ring.p(), prec - shift));
        let mut out = vec![vec![BigInt::zero(); ring.rank()]; len];
        let nz_b: Vec<usize> = (0..len).filter(|&j| !is_zero_vec(&b.ints[j])).collect();
        for (i, x) in a.ints.iter().enumerate() {
            if is_zero_vec(x) {
                continue;
            }
            for &j in &nz_b {
                mul_acc(ring, &mut out[(i + j) % len], x, &b.ints[j]);
            }
        }
        for v in out.iter_mut() {
            reduce_mod(v, &m);
        }
        GroupRingElement { ring: ring.clone(), level: self.level, coeffs: unpack(ring, shift, &out, prec) }
    }

    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ring, self.level)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ring, self.level)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Equality at precision: same ring shape and a difference that vanishes
/// at the working precision.
impl PartialEq for GroupRingElement {
    fn eq(&self, o: &Self) -> bool {
        self.ring.same_shape(&o.ring) && self.level == o.level && self.coeffs == o.coeffs
    }
}
