use alloc::vec::Vec;

use super::division::{weierstrass_divide, InY};
use super::one_var::{content, prep1};
use crate::error::{Error, Result};
use crate::padic::ExtensionElement;
use crate::series::{Algebra, TruncSeries1, TruncSeries2, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VariableOrder {
    #[default]
    XThenY,
    YThenX,
}

/// A distinguished polynomial in `var` whose coefficients are series in the
/// other variable, monic of degree `coeffs.len() - 1`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub var: Var,
    /// Position in the processing order, starting at 1.
    pub stage: usize,
    pub coeffs: Vec<TruncSeries1>,
}

impl Factor {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Whether every non-leading coefficient lies in `(p)` for the first
    /// stage and in `(p, other variable)` for the second.
    pub fn in_ideal(&self) -> bool {
        self.coeffs[..self.degree()].iter().all(|a| {
            a.coeffs().iter().enumerate().all(|(k, c)| {
                let outside = if self.stage == 1 { true } else { k == 0 };
                !outside || content(c).is_none_or(|v| v >= 1)
            })
        })
    }

    pub fn to_series(&self, caps: (usize, usize)) -> TruncSeries2 {
        let ring = self.coeffs[0].ring();
        let mut out = TruncSeries2::zero(ring, caps);
        for (l, a) in self.coeffs.iter().enumerate() {
            for (k, c) in a.coeffs().iter().enumerate() {
                let (i, j) = match self.var {
                    Var::X => (l, k),
                    Var::Y => (k, l),
                };
                if i < caps.0 && j < caps.1 {
                    out.set(i, j, c.clone());
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct TwoVarPrep {
    pub mu: i64,
    pub factors: Vec<Factor>,
    pub unit: TruncSeries2,
    /// Absolute precision to which the factorization identity holds.
    pub identity_prec: i64,
    /// Precision to which the distinguished coefficients are determined by
    /// the truncated input.
    pub certified_prec: i64,
}

impl TwoVarPrep {
    pub fn recompose(&self) -> TruncSeries2 {
        let caps = self.unit.caps();
        let mut acc = self.unit.clone();
        for f in &self.factors {
            acc = acc.mul(&f.to_series(caps));
        }
        acc.map(|c| c.shift(self.mu))
    }
}

fn x_order_mod_p(s: &TruncSeries1) -> Option<usize> {
    s.coeffs().iter().position(|c| content(c) == Some(0))
}

/// Weierstrass preparation in two variables: `f = p^mu * f1(X) * f2(X, Y) * unit`
/// with `f2` distinguished in `Y` over `(p, X)`.
pub fn prep2(f: &TruncSeries2, order: VariableOrder) -> Result<TwoVarPrep> {
    if order == VariableOrder::YThenX {
        let mut r = prep2(&f.swap_vars(), VariableOrder::XThenY)?;
        r.unit = r.unit.swap_vars();
        for fac in &mut r.factors {
            fac.var = match fac.var {
                Var::X => Var::Y,
                Var::Y => Var::X,
            };
            for a in &mut fac.coeffs {
                *a = a.clone().with_var(match fac.var {
                    Var::X => Var::Y,
                    Var::Y => Var::X,
                });
            }
        }
        return Ok(r);
    }
    let ring = f.ring().clone();
    if ring.ramification() > 1 {
        return Err(Error::UnsupportedRing("preparation needs an unramified coefficient ring"));
    }
    let n = ring.prec();
    let (mx, my) = f.caps();
    let mu = f.coeffs().iter().filter_map(content).min().ok_or(Error::ZeroAtPrecision)?;
    let floor = f.coeffs().iter().filter(|c| c.is_zero()).map(|c| c.prec()).min().unwrap_or(i64::MAX);
    if mu >= floor || mu >= n {
        return Err(Error::ZeroAtPrecision);
    }
    let g = f.map(|c| c.shift(-mu));
    let mut certified = n - mu;
    let mut identity = n;
    let mut factors = Vec::new();

    // stage one: the part depending on X alone
    let cols: Vec<TruncSeries1> = (0..my).map(|j| g.y_coeff(j)).collect();
    let (lambda1, j0) = cols
        .iter()
        .enumerate()
        .filter_map(|(j, c)| x_order_mod_p(c).map(|o| (o, j)))
        .min()
        .ok_or(Error::ZeroAtPrecision)?;
    let g = if lambda1 == 0 {
        g
    } else {
        let prep = prep1(&cols[j0])?;
        certified = certified.min(prep.certified_prec);
        let pad = mx + lambda1 * (n - mu + 1) as usize;
        let f1 = prep.distinguished_series().with_cap(pad);
        let mut quotients = Vec::with_capacity(my);
        for col in &cols {
            let (q, r) = weierstrass_divide(&col.with_cap(pad), &f1, lambda1, (n + 4) as usize)?;
            let v = r.coeffs().iter().filter_map(content).min().unwrap_or(i64::MAX);
            if v < prep.certified_prec {
                return Err(Error::NotPreparable);
            }
            identity = identity.min(v.saturating_add(mu));
            quotients.push(q.with_cap(mx));
        }
        let coeffs = prep
            .distinguished
            .iter()
            .map(|c| TruncSeries1::constant(c, my).with_var(Var::Y))
            .collect();
        factors.push(Factor { var: Var::X, stage: 1, coeffs });
        TruncSeries2::from_y_coeffs(&ring, &quotients)?
    };

    // stage two: distinguished in Y over (p, X)
    let lambda2 = (0..my)
        .find(|&j| content(g.coeff(0, j)) == Some(0))
        .ok_or(Error::StageLambdaExceedsCap { stage: 2 })?;
    let unit = if lambda2 == 0 {
        g
    } else {
        let iters = (n - mu) as usize + mx + 4;
        let pad = my + lambda2 * (iters + 1);
        let gp = InY(g.with_caps((mx, pad)));
        let mut h = TruncSeries2::zero(&ring, (mx, pad));
        h.set(0, lambda2, ExtensionElement::one(&ring));
        let (q, r) = weierstrass_divide(&InY(h), &gp, lambda2, iters)?;
        let mut coeffs: Vec<TruncSeries1> = (0..lambda2).map(|l| r.0.y_coeff(l).neg()).collect();
        coeffs.push(TruncSeries1::one(&ring, mx));
        factors.push(Factor { var: Var::Y, stage: 2, coeffs });
        certified = certified.min((my / lambda2) as i64);
        super::division::inverse2(&q.0)?.with_caps((mx, my))
    };
    Ok(TwoVarPrep { mu, factors, unit, identity_prec: identity, certified_prec: certified })
}
