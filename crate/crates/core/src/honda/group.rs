use alloc::format;

use crate::error::{Error, Result};
use crate::padic::ExtensionElement;

use super::log::{honda_log, HondaLog};
use super::multi::TotalDegreeSeries;

/// The group law `l^(-1)(l(X) + l(Y))` modulo total degree `degree + 1`.
#[derive(Clone, Debug)]
pub struct FormalGroup {
    pub law: TotalDegreeSeries,
    pub log: HondaLog,
    pub degree: usize,
    pub prec: i64,
}

/// Builds the group law of the Honda logarithm of `f_u` and checks that
/// every coefficient is integral.
pub fn formal_group(u: &ExtensionElement, prec: i64, degree: usize) -> Result<FormalGroup> {
    let p = u.p() as usize;
    if degree < 1 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    let mut l = 0i64;
    let mut q = p;
    while q <= degree {
        q *= p;
        l += 1;
    }
    // Denominators of the logarithm and of its inverse are bounded by
    // p^l below degree p^(l+1).
    let working = prec + 4 * (l + 1) + 2;
    let log = honda_log(u, working, degree + 1)?;
    let inv = log.series.revert()?;
    let lx = TotalDegreeSeries::from_series(&log.series, 2, degree, 0);
    let ly = TotalDegreeSeries::from_series(&log.series, 2, degree, 1);
    let law = lx.add(&ly)?.substitute_into(&inv)?;
    if law.prec() < prec {
        return Err(Error::PrecisionExhausted(format!("group law known to {} of {} digits", law.prec(), prec)));
    }
    let law = law.with_prec(prec);
    if let Some((index, v)) = law.min_valuation() {
        if v < 0 {
            return Err(Error::IntegralityViolation { index, valuation: v.into() });
        }
    }
    Ok(FormalGroup { law, log, degree, prec })
}

impl FormalGroup {
    /// `F(a, b)` for series without constant term.
    pub fn apply(&self, a: &TotalDegreeSeries, b: &TotalDegreeSeries) -> Result<TotalDegreeSeries> {
        self.law.substitute2(a, b)
    }

    /// `F(Y, X) - F(X, Y)`.
    pub fn commutator(&self) -> Result<TotalDegreeSeries> {
        let ring = self.law.ring();
        let x = TotalDegreeSeries::var(ring, 2, self.degree, 0);
        let y = TotalDegreeSeries::var(ring, 2, self.degree, 1);
        self.apply(&y, &x)?.sub(&self.law)
    }

    /// `F(F(X, Y), Z) - F(X, F(Y, Z))` in three variables.
    pub fn associator(&self) -> Result<TotalDegreeSeries> {
        let ring = self.law.ring();
        let v: alloc::vec::Vec<_> = (0..3).map(|i| TotalDegreeSeries::var(ring, 3, self.degree, i)).collect();
        let left = self.apply(&self.apply(&v[0], &v[1])?, &v[2])?;
        let right = self.apply(&v[0], &self.apply(&v[1], &v[2])?)?;
        left.sub(&right)
    }

    /// `F(X, 0)` as a two-variable series.
    pub fn with_zero(&self, slot: usize) -> Result<TotalDegreeSeries> {
        let ring = self.law.ring();
        let x = TotalDegreeSeries::var(ring, 2, self.degree, slot);
        let zero = TotalDegreeSeries::zero(ring, 2, self.degree);
        if slot == 0 {
            self.apply(&x, &zero)
        } else {
            self.apply(&zero, &x)
        }
    }
}
