use alloc::format;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::padic::{frobenius_pow, ExtensionElement, PadicNumber};
use crate::series::{Algebra, TruncSeries1};

use super::tables::recurrence_tables;

/// The logarithm `sum_k x_k f^(k)(X)` together with its truncation data.
#[derive(Clone, Debug)]
pub struct HondaLog {
    pub series: TruncSeries1,
    /// Last iterate index included in the sum.
    pub terms: usize,
    /// Precision the iterates were carried at.
    pub working_prec: i64,
    /// Least valuation among the `x_k` used, recomputed from the table.
    pub x_floor: i64,
    /// Least coordinate valuation of `series - X`.
    pub floor: i64,
}

/// `(u + X)^p - u^p` truncated at `cap`.
pub fn f_series(u: &ExtensionElement, cap: usize) -> TruncSeries1 {
    let ring = u.ring();
    let p = ring.p() as u64;
    let mut s = TruncSeries1::zero(ring, cap);
    let mut upow = ExtensionElement::one(ring);
    for j in (1..=p as usize).rev() {
        if j < cap {
            s.set_coeff(j, upow.scale_i64(binomial(p, j as u64) as i64));
        }
        upow = upow.mul(u);
    }
    s
}

/// `f_(u^phi^(j-1))` applied to `g` for `j = 1..=k`, starting from `g`.
fn apply_f(u: &ExtensionElement, g: &TruncSeries1) -> TruncSeries1 {
    let f = f_series(u, u.p() as usize + 1);
    let mut acc = TruncSeries1::zero(g.ring(), g.cap());
    for c in f.coeffs().iter().skip(1).rev() {
        let mut next = acc.clone();
        next.set_coeff(0, next.coeff(0).add(c));
        acc = next.mul(g);
    }
    acc
}

/// The iterate `f^(k) = f^(phi^(k-1)) o ... o f^phi o f`, with `f^(0) = X`.
pub fn f_iterate(u: &ExtensionElement, k: usize, cap: usize) -> Result<TruncSeries1> {
    let mut g = TruncSeries1::var(u.ring(), cap);
    for i in 0..k {
        g = apply_f(&frobenius_pow(u, i as i64)?, &g);
    }
    Ok(g)
}

fn log_floor(p: u32, cap: usize) -> i64 {
    let mut l = 0;
    let mut q = p as u128;
    while q < cap as u128 {
        q *= p as u128;
        l += 1;
    }
    l
}

/// The Honda logarithm of `f_u` to absolute precision `prec` and `X`-cap `cap`.
///
/// Once every coefficient of `f^(k)` has valuation `e >= 1`, each further
/// iterate gains at least one unit, so the term `j > k` has valuation at
/// least `e + j - k + v(x_j)`. The sum stops when that bound reaches
/// `prec` for all tabulated `j` and, past the table, with `v(x_j) >= -ceil(j/2)`.
pub fn honda_log(u: &ExtensionElement, prec: i64, cap: usize) -> Result<HondaLog> {
    let ring = u.ring();
    let p = ring.p();
    if u.coord_valuation() != 0 {
        return Err(Error::InvalidParameters("u must be a unit".into()));
    }
    if cap < 2 || prec < 1 {
        return Err(Error::InvalidParameters("cap must be at least 2 and precision positive".into()));
    }
    let l = log_floor(p, cap);
    let k_max = (2 * (prec + l) + 8) as usize;
    let working = prec + (k_max as i64 + 1) / 2 + 2;
    let wring = ring.at_prec(working)?;
    let u = u.recast(&wring)?;
    let tables = recurrence_tables(p, ring.ap(), 2, k_max, working);
    let mut g = TruncSeries1::var(&wring, cap);
    let mut sum = g.clone();
    let mut x_floor = 0;
    let mut twist = u.clone();
    for k in 1..=k_max {
        g = apply_f(&twist, &g);
        twist = frobenius_pow(&twist, 1)?;
        let xk = &tables.x[k];
        x_floor = x_floor.min(xk.valuation().unwrap_or(0));
        sum = sum.add(&g.scale_padic(xk));
        let e = g.coord_valuation();
        if e >= 1 && tail_below(&tables.x, k, e, prec) {
            if sum.prec() < prec {
                return Err(Error::PrecisionExhausted(format!(
                    "logarithm known to {} of {} digits",
                    sum.prec(),
                    prec
                )));
            }
            let out = sum.with_prec(prec).recast(&ring.at_prec(prec)?)?;
            let mut rest = out.clone();
            rest.set_coeff(1, rest.coeff(1).sub(&ExtensionElement::one(rest.ring())));
            let floor = rest.coord_valuation();
            return Ok(HondaLog { series: out, terms: k, working_prec: working, x_floor, floor });
        }
    }
    Err(Error::PrecisionExhausted(format!("iterates did not reach valuation {prec} within {k_max} terms")))
}

fn tail_below(x: &[PadicNumber], k: usize, e: i64, prec: i64) -> bool {
    let last = x.len() as i64;
    let tabulated = x.iter().enumerate().skip(k + 1).all(|(j, xj)| match xj.valuation() {
        Some(v) => e + (j - k) as i64 + v >= prec,
        None => true,
    });
    tabulated && e + last - k as i64 - (last + 1) / 2 >= prec
}
