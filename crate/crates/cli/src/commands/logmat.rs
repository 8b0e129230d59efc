use serde_json::{json, Value};

use sharpflat_core::logmatrix::{log_matrix, log_matrix_at_root, log_matrix_with, root_product};
use sharpflat_core::series::Mat2;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::format::{element_json, RingJson, SeriesJson};

pub(super) fn run(c: &mut RunConfig) -> CliResult<Value> {
    let n = *c.prec_p.get_or_insert(10);
    if let Some(level) = c.level {
        let m = log_matrix_at_root(c.p, c.ap, level, n)?;
        if c.verify {
            let deeper = root_product(c.p, c.ap, level, level + 1, n)?;
            if !m.sub(&deeper).is_zero() {
                return Err(CliError::Verification("value at the root depends on the depth".into()));
            }
        }
        let row = |i| vec![element_json(m.get(i, 0)), element_json(m.get(i, 1))];
        return Ok(json!({
            "atRoot": level,
            "ring": RingJson::of(m.get(0, 0).ring()),
            "entries": [row(0), row(1)],
        }));
    }
    let cap = *c.prec_x.get_or_insert(27);
    let r = log_matrix(c.p, c.ap, n, cap)?;
    if c.verify {
        let deeper = log_matrix_with(c.p, c.ap, n, cap, r.depth + 1, r.working_prec + 1)?;
        if !r.matrix.sub(&deeper.matrix).is_zero() {
            return Err(CliError::Verification("one more factor changes the product".into()));
        }
    }
    Ok(json!({
        "matrix": matrix_json(&r.matrix),
        "certificate": {
            "depth": r.certificate.depth,
            "criterion": r.certificate.criterion,
            "tailValuation": r.certificate.tail_valuation.to_string(),
            "firstOmitted": r.certificate.first_omitted,
        },
        "workingPrec": r.working_prec,
    }))
}

pub(crate) fn matrix_json(m: &Mat2<sharpflat_core::series::TruncSeries1>) -> Value {
    let row = |i| vec![SeriesJson::of1(m.get(i, 0)), SeriesJson::of1(m.get(i, 1))];
    json!([row(0), row(1)])
}
