use serde_json::{json, Value};

use sharpflat_core::honda::{verify_traces, Convention, Relation, TraceCase};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

fn convention_json(c: &Convention) -> Value {
    json!({ "weight": c.weight.name(), "piForm": c.pi_form.name() })
}

fn case_json(c: &TraceCase) -> Value {
    json!({
        "n": c.n,
        "m": c.m,
        "relation": c.relation.name(),
        "pass": c.pass,
        "discrepancyValuation": c.discrepancy_valuation,
    })
}

pub(super) fn run(c: &mut RunConfig) -> CliResult<Value> {
    let n_max = *c.nmax.get_or_insert(3);
    let m_max = *c.mmax.get_or_insert(1);
    let prec = *c.prec_p.get_or_insert(8);
    let report = verify_traces(c.p, c.ap, n_max, m_max, prec)?;
    let selected = report.selected();
    if c.verify {
        let unram_ok = report.reports.iter().all(|r| {
            r.cases.iter().filter(|k| k.relation == Relation::Unramified).all(|k| k.pass)
        });
        if selected.is_none() || !unram_ok {
            return Err(CliError::Verification("no convention passes every trace relation".into()));
        }
    }
    Ok(json!({
        "convention": selected.map(|r| convention_json(&r.convention)),
        "cases": selected.map(|r| r.cases.iter().map(case_json).collect::<Vec<_>>()).unwrap_or_default(),
        "conventions": report.reports.iter().map(|r| json!({
            "convention": convention_json(&r.convention),
            "passes": r.passes(),
            "cases": r.cases.iter().map(case_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "generator": report.generator.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "prec": report.prec,
    }))
}
