use alloc::vec::Vec;

use super::division::weierstrass_divide;
use crate::error::{Error, Result};
use crate::padic::ExtensionElement;
use crate::series::{Algebra, TruncSeries1};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub mu: i64,
    pub lambda: usize,
}

/// Least coordinate valuation over the nonzero coordinates.
pub(crate) fn content(c: &ExtensionElement) -> Option<i64> {
    c.coords().iter().filter(|x| !x.is_zero()).filter_map(|x| x.valuation()).min()
}

/// `mu` is the least coefficient valuation and `lambda` the first index
/// attaining it.
pub fn newton_invariants(f: &TruncSeries1) -> Result<Invariants> {
    let mut best: Option<(i64, usize)> = None;
    for (j, c) in f.coeffs().iter().enumerate() {
        if let Some(v) = content(c) {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, j));
            }
        }
    }
    let (mu, lambda) = best.ok_or(Error::ZeroAtPrecision)?;
    // a zero coefficient known only below `mu` could hide a smaller valuation
    let floor = f.coeffs().iter().filter(|c| c.is_zero()).map(|c| c.prec()).min().unwrap_or(i64::MAX);
    if mu >= floor || mu >= f.ring().prec() {
        return Err(Error::ZeroAtPrecision);
    }
    if lambda >= f.cap() {
        return Err(Error::LambdaExceedsCap);
    }
    Ok(Invariants { mu, lambda })
}

/// `f = p^mu * distinguished * unit` with `distinguished` monic of degree
/// `lambda`.
#[derive(Clone, Debug)]
pub struct PrepFactorization {
    pub mu: i64,
    pub lambda: usize,
    /// Coefficients in increasing degree, `lambda + 1` of them, the last one 1.
    pub distinguished: Vec<ExtensionElement>,
    pub unit: TruncSeries1,
    /// Absolute precision to which `distinguished` is determined by the
    /// truncated input.
    pub certified_prec: i64,
}

impl PrepFactorization {
    pub fn distinguished_series(&self) -> TruncSeries1 {
        let mut d = self.unit.zero_like();
        for (k, c) in self.distinguished.iter().enumerate().take(d.cap()) {
            d.set_coeff(k, c.clone());
        }
        d
    }

    pub fn recompose(&self) -> TruncSeries1 {
        self.distinguished_series().mul(&self.unit).map(|c| c.shift(self.mu))
    }
}

fn check_unramified(f: &TruncSeries1) -> Result<()> {
    if f.ring().ramification() > 1 {
        return Err(Error::UnsupportedRing("preparation needs an unramified coefficient ring"));
    }
    Ok(())
}

/// Weierstrass preparation in one variable.
pub fn prep1(f: &TruncSeries1) -> Result<PrepFactorization> {
    check_unramified(f)?;
    let Invariants { mu, lambda } = newton_invariants(f)?;
    let m = f.cap();
    let n = f.ring().prec();
    let g = f.map(|c| c.shift(-mu));
    if lambda == 0 {
        let one = ExtensionElement::one(f.ring());
        return Ok(PrepFactorization { mu, lambda, distinguished: alloc::vec![one], unit: g, certified_prec: n - mu });
    }
    let padded = m + lambda * (n - mu + 1).max(0) as usize;
    let g_pad = g.with_cap(padded);
    let h = TruncSeries1::monomial(&ExtensionElement::one(f.ring()), lambda, padded);
    let (q, r) = weierstrass_divide(&h, &g_pad, lambda, (n + 4) as usize)?;
    let mut distinguished: Vec<ExtensionElement> = (0..lambda).map(|k| r.coeff(k).neg()).collect();
    distinguished.push(ExtensionElement::one(f.ring()));
    let unit = q.inv()?.with_cap(m);
    let certified_prec = (n - mu).min((m / lambda) as i64);
    Ok(PrepFactorization { mu, lambda, distinguished, unit, certified_prec })
}
