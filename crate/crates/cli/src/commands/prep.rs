use serde_json::{json, Value};

use sharpflat_core::series::Algebra;
use sharpflat_core::weierstrass::{newton_invariants, prep1, prep2, VariableOrder};

use crate::config::{read_payload, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::{element_json, SeriesJson};
use crate::Order;

pub(super) fn one(c: &mut RunConfig) -> CliResult<Value> {
    let f = read_payload::<SeriesJson>(c.input(0)?)?.to1()?;
    let prep = prep1(&f)?;
    if c.verify {
        let inv = newton_invariants(&f)?;
        if (inv.mu, inv.lambda) != (prep.mu, prep.lambda) {
            return Err(CliError::Verification("invariants disagree with the Newton polygon".into()));
        }
        if !prep.recompose().sub(&f).is_zero() {
            return Err(CliError::Verification("factorization does not recompose".into()));
        }
    }
    Ok(json!({
        "mu": prep.mu,
        "lambda": prep.lambda,
        "distinguished": prep.distinguished.iter().map(element_json).collect::<Vec<_>>(),
        "unitConstant": element_json(prep.unit.coeff(0)),
        "unit": SeriesJson::of1(&prep.unit),
        "certifiedPrec": prep.certified_prec,
    }))
}

pub(super) fn two(c: &mut RunConfig, order: Order) -> CliResult<Value> {
    let f = read_payload::<SeriesJson>(c.input(0)?)?.to2()?;
    let order = match order {
        Order::Xy => VariableOrder::XThenY,
        Order::Yx => VariableOrder::YThenX,
    };
    let prep = prep2(&f, order)?;
    if c.verify {
        if !prep.factors.iter().all(|f| f.in_ideal()) {
            return Err(CliError::Verification("a factor coefficient leaves its ideal".into()));
        }
        if !prep.recompose().sub(&f).is_zero() {
            return Err(CliError::Verification("factorization does not recompose".into()));
        }
    }
    let factors: Vec<Value> = prep
        .factors
        .iter()
        .map(|f| {
            json!({
                "var": f.var.name(),
                "stage": f.stage,
                "degree": f.degree(),
                "coeffs": f.coeffs.iter().map(SeriesJson::of1).collect::<Vec<_>>(),
                "inIdeal": f.in_ideal(),
            })
        })
        .collect();
    Ok(json!({
        "mu": prep.mu,
        "factors": factors,
        "unitConstant": element_json(prep.unit.coeff(0, 0)),
        "unit": SeriesJson::of2(&prep.unit),
        "identityPrec": prep.identity_prec,
        "certifiedPrec": prep.certified_prec,
    }))
}
