use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::padic::{ExtensionElement, Ring};
use crate::series::TruncSeries1;

/// A power series in a few variables, truncated above a total degree.
#[derive(Clone, Debug)]
pub struct TotalDegreeSeries {
    ring: Ring,
    vars: usize,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    coeffs: Vec<ExtensionElement>,
}

fn monomials(vars: usize, degree: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=degree {
        let mut cur = vec![0u32; vars];
        push_degree(&mut out, &mut cur, 0, d as u32);
    }
    out
}

fn push_degree(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        push_degree(out, cur, i + 1, left - e);
    }
}

impl TotalDegreeSeries {
    pub fn zero(ring: &Ring, vars: usize, degree: usize) -> Self {
        let monomials = monomials(vars, degree);
        let coeffs = vec![ExtensionElement::zero(ring); monomials.len()];
        TotalDegreeSeries { ring: ring.clone(), vars, degree, monomials, coeffs }
    }

    /// The variable with index `i`.
    pub fn var(ring: &Ring, vars: usize, degree: usize, i: usize) -> Self {
        let mut s = Self::zero(ring, vars, degree);
        let mut e = vec![0; vars];
        e[i] = 1;
        s.set(&e, ExtensionElement::one(ring));
        s
    }

    /// A one-variable series read in variable `i`.
    pub fn from_series(s: &TruncSeries1, vars: usize, degree: usize, i: usize) -> Self {
        let mut out = Self::zero(s.ring(), vars, degree);
        let mut e = vec![0; vars];
        for (k, c) in s.coeffs().iter().enumerate().take(degree + 1) {
            e[i] = k as u32;
            out.set(&e, c.clone());
        }
        out
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn coeffs(&self) -> &[ExtensionElement] {
        &self.coeffs
    }

    fn index(&self, e: &[u32]) -> Option<usize> {
        self.monomials.iter().position(|m| m == e)
    }

    /// Coefficient of the monomial with exponents `e`, zero beyond the degree.
    pub fn coeff(&self, e: &[u32]) -> ExtensionElement {
        match self.index(e) {
            Some(i) => self.coeffs[i].clone(),
            None => ExtensionElement::zero(&self.ring),
        }
    }

    pub fn set(&mut self, e: &[u32], c: ExtensionElement) {
        if let Some(i) = self.index(e) {
            self.coeffs[i] = c;
        }
    }

    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap_or(i64::MAX)
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|c| c.with_prec(prec)).collect();
        s
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars || self.degree != o.degree {
            return Err(Error::CapMismatch);
        }
        if !self.ring.same_shape(&o.ring) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut s = self.clone();
        for (a, b) in s.coeffs.iter_mut().zip(&o.coeffs) {
            *a = a.add(b);
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&ExtensionElement::from_i64(&o.ring, -1)))
    }

    pub fn scale(&self, c: &ExtensionElement) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|a| a.mul(c)).collect();
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        // Monomials are listed by degree; the index of an exponent
        // vector is found through a sorted map.
        let lookup: BTreeMap<&[u32], usize> =
            self.monomials.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let degs: Vec<u32> = self.monomials.iter().map(|m| m.iter().sum()).collect();
        let mut acc = vec![ExtensionElement::zero(&self.ring); self.coeffs.len()];
        let mut e = vec![0u32; self.vars];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if degs[i] + degs[j] > self.degree as u32 {
                    break;
                }
                if b.is_exact_zero() {
                    continue;
                }
                for (t, (x, y)) in e.iter_mut().zip(self.monomials[i].iter().zip(&o.monomials[j])) {
                    *t = x + y;
                }
                let k = lookup[e.as_slice()];
                acc[k] = acc[k].add(&a.mul(b));
            }
        }
        let mut s = self.clone();
        s.coeffs = acc;
        Ok(s)
    }

    /// Whether the constant term vanishes.
    pub fn in_maximal_ideal(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// `f(self)` for a one-variable `f`, by Horner's rule.
    pub fn substitute_into(&self, f: &TruncSeries1) -> Result<Self> {
        if !self.in_maximal_ideal() {
            return Err(Error::NotInDisk);
        }
        let top = f.cap().min(self.degree + 1);
        let mut acc = Self::zero(&self.ring, self.vars, self.degree);
        for k in (0..top).rev() {
            acc = acc.mul(self)?;
            acc.coeffs[0] = acc.coeffs[0].add(f.coeff(k));
        }
        Ok(acc)
    }

    /// `self(a, b)` for a two-variable series and substitutes without
    /// constant term.
    pub fn substitute2(&self, a: &Self, b: &Self) -> Result<Self> {
        if self.vars != 2 {
            return Err(Error::InvalidParameters("substitution needs a two-variable series".into()));
        }
        a.check(b)?;
        if !a.in_maximal_ideal() || !b.in_maximal_ideal() {
            return Err(Error::NotInDisk);
        }
        let d = self.degree.min(a.degree);
        let mut bpow = Vec::with_capacity(d + 1);
        let mut cur = Self::zero(&a.ring, a.vars, a.degree);
        cur.coeffs[0] = ExtensionElement::one(&a.ring);
        for _ in 0..=d {
            bpow.push(cur.clone());
            cur = cur.mul(b)?;
        }
        // rows[i] = sum_j c_(i,j) b^j
        let mut rows = vec![Self::zero(&a.ring, a.vars, a.degree); d + 1];
        for (m, c) in self.monomials.iter().zip(&self.coeffs) {
            let (i, j) = (m[0] as usize, m[1] as usize);
            if c.is_exact_zero() || i > d || j > d {
                continue;
            }
            rows[i] = rows[i].add(&bpow[j].scale(c))?;
        }
        let mut acc = rows[d].clone();
        for i in (0..d).rev() {
            acc = acc.mul(a)?.add(&rows[i])?;
        }
        Ok(acc)
    }

    /// Least coordinate valuation over the coefficients, with its index.
    pub fn min_valuation(&self) -> Option<(usize, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.coord_valuation()))
            .min_by_key(|&(_, v)| v)
    }
}

impl PartialEq for TotalDegreeSeries {
    fn eq(&self, o: &Self) -> bool {
        self.vars == o.vars && self.degree == o.degree && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a == b)
    }
}
