use serde_json::{json, Value};

use sharpflat_core::logmatrix::{growth_profile, log_matrix, GrowthProfile};
use sharpflat_core::padic::{RingDescriptor, RingKind};
use sharpflat_core::series::{log_one_plus, TruncSeries1};

use crate::config::{read_payload, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::SeriesJson;

/// Fixed-point decimal rendering of a fitted slope.
fn decimal(x: f64) -> String {
    format!("{x:.6}")
}

fn profile_json(name: &str, g: &GrowthProfile) -> Value {
    json!({
        "name": name,
        "order": decimal(g.order),
        "residual": decimal(g.residual),
        "coefficientOrder": decimal(g.coefficient_order),
        "coefficientResidual": decimal(g.coefficient_residual),
        "floors": g.floors.iter().map(|f| f.map(|v| v.to_string())).collect::<Vec<_>>(),
        "samples": g.samples.iter().map(|s| json!({
            "level": s.level,
            "supLog": s.sup_log.to_string(),
            "valueValuation": s.value_valuation.map(|v| v.to_string()),
        })).collect::<Vec<_>>(),
    })
}

pub(super) fn run(c: &mut RunConfig) -> CliResult<Value> {
    if !c.inputs.is_empty() {
        let f: TruncSeries1 = read_payload::<SeriesJson>(c.input(0)?)?.to1()?;
        let g = growth_profile(std::slice::from_ref(&f))?;
        return Ok(json!({ "profiles": [profile_json("input", &g)] }));
    }
    let n = *c.prec_p.get_or_insert(10);
    let cap = *c.prec_x.get_or_insert(81);
    let log = log_matrix(c.p, c.ap, n, cap)?;
    let mut profiles = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let g = growth_profile(std::slice::from_ref(log.matrix.get(i, j)))?;
        worst = worst.max(g.order);
        profiles.push(profile_json(&format!("log{}{}", i + 1, j + 1), &g));
    }
    let base = RingDescriptor::new(c.p, c.ap, RingKind::Base, n)?;
    let cal = growth_profile(&[log_one_plus(&base, cap)?])?;
    if c.verify && (worst > 0.6 || (cal.order - 1.0).abs() > 0.1) {
        return Err(CliError::Verification(format!("orders {worst:.3} and {:.3} outside bounds", cal.order)));
    }
    profiles.push(profile_json("calibration", &cal));
    Ok(json!({ "profiles": profiles, "maxEntryOrder": decimal(worst) }))
}
