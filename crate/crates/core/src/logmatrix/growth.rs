use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::padic::{ExtensionElement, Valuation};
use crate::series::{eval_at, TailFloor, TruncSeries1};

#[derive(Clone, Debug)]
pub struct GrowthSample {
    pub level: u32,
    /// `log_p` of the sup norm on the closed disk of radius
    /// `|zeta_(p^level) - 1|`, from the coefficients below the cap.
    pub sup_log: Valuation,
    /// Valuation floor of the value at `zeta_(p^level) - 1`.
    pub value_valuation: Option<Valuation>,
}

#[derive(Clone, Debug)]
pub struct GrowthProfile {
    /// Least coefficient valuation per degree; `None` where all vanish.
    pub floors: Vec<Option<Valuation>>,
    /// Slope of `sup_log` against the level.
    pub order: f64,
    pub residual: f64,
    /// Slope of the running maximum of `-v_j` against `log_p j`, `j >= p`.
    pub coefficient_order: f64,
    pub coefficient_residual: f64,
    pub samples: Vec<GrowthSample>,
}

fn fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    if points.len() < 2 {
        return (0.0, 0.0);
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let ss: f64 = points.iter().map(|p| p.1 - my - slope * (p.0 - mx)).map(|r| r * r).sum();
    (slope, libm::sqrt(ss / n))
}

fn to_f64(v: Valuation) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Largest level at which the value at a root is also computed.
const EVAL_LEVELS: u32 = 3;

/// Growth data of one series or of several series taken together.
pub fn growth_profile(entries: &[TruncSeries1]) -> Result<GrowthProfile> {
    let first = entries.first().ok_or(Error::ZeroAtPrecision)?;
    let ring = first.ring().clone();
    let p = ring.p();
    let cap = entries.iter().map(|e| e.cap()).min().unwrap_or(0);
    let floors: Vec<Option<Valuation>> = (0..cap)
        .map(|j| {
            entries.iter().map(|e| e.coeff(j)).filter(|c| !c.is_zero()).map(ExtensionElement::valuation_floor).min()
        })
        .collect();
    if floors.iter().all(|f| f.is_none()) {
        return Err(Error::ZeroAtPrecision);
    }
    let mut samples = Vec::new();
    let mut level = 1;
    while (p as usize).pow(level) <= cap {
        let phi = Valuation::from_integer(((p - 1) * p.pow(level - 1)) as i64);
        let sup_log = floors
            .iter()
            .enumerate()
            .filter_map(|(j, f)| f.map(|v| -v - Valuation::from_integer(j as i64) / phi))
            .max()
            .expect("some coefficient is nonzero");
        let value_valuation = if level <= EVAL_LEVELS {
            let target = ring.with(ring.has_quad(), level, ring.unram_level())?;
            let x = ExtensionElement::zeta(&target)?.sub(&ExtensionElement::one(&target));
            let mut best: Option<Valuation> = None;
            for e in entries {
                let val = eval_at(e, &x, TailFloor::Polynomial)?.value;
                if !val.is_zero() {
                    let v = val.valuation_floor();
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
            best
        } else {
            None
        };
        samples.push(GrowthSample { level, sup_log, value_valuation });
        level += 1;
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.level as f64, to_f64(s.sup_log))).collect();
    let (order, residual) = fit(&pts);
    let lp = libm::log(p as f64);
    let mut env: Option<Valuation> = None;
    let mut cpts = Vec::new();
    for (j, f) in floors.iter().enumerate() {
        if let Some(v) = f {
            env = Some(env.map_or(-*v, |e| e.max(-*v)));
        }
        if j >= p as usize {
            if let Some(e) = env {
                cpts.push((libm::log(j as f64) / lp, to_f64(e)));
            }
        }
    }
    let (coefficient_order, coefficient_residual) = fit(&cpts);
    Ok(GrowthProfile { floors, order, residual, coefficient_order, coefficient_residual, samples })
}
