use serde_json::{json, Value};

use sharpflat_core::decompose::{compose1, compose2, decompose1, decompose2};
use sharpflat_core::series::Algebra;

use crate::config::{read_payload, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::{CertificateJson, FourJson, LFunctionsJson, PairJson};

fn fix_cap(slot: &mut Option<usize>, got: usize, name: &str) -> CliResult<usize> {
    match *slot {
        Some(c) if c != got => Err(CliError::malformed(format!("{name} {c} but the input has cap {got}"))),
        _ => {
            *slot = Some(got);
            Ok(got)
        }
    }
}

pub(super) fn one(c: &mut RunConfig) -> CliResult<Value> {
    let input: LFunctionsJson = read_payload(c.input(0)?)?;
    let l = [input.lalpha.to1()?, input.lbeta.to1()?];
    if l[0].cap() != l[1].cap() {
        return Err(CliError::malformed("L_alpha and L_beta have different caps"));
    }
    let cap = fix_cap(&mut c.prec_x, l[0].cap(), "--prec-x")?;
    let n = *c.prec_p.get_or_insert(12);
    let pair = decompose1(&l, n, cap)?;
    if c.verify {
        let back = compose1(&pair, n, cap)?;
        let same = back.iter().zip(&l).all(|(a, b)| {
            b.recast(a.ring()).map(|b| a.sub(&b).is_zero()).unwrap_or(false)
        });
        if !same {
            return Err(CliError::Verification("the pair does not recompose to the input".into()));
        }
    }
    Ok(json!({ "pair": PairJson::of(&pair) }))
}

pub(super) fn two(c: &mut RunConfig) -> CliResult<Value> {
    let input: FourJson = read_payload(c.input(0)?)?;
    let m = input.to_matrix()?;
    let (mx, my) = m.get(0, 0).caps();
    fix_cap(&mut c.prec_x, mx, "--prec-x")?;
    fix_cap(&mut c.prec_y, my, "--prec-y")?;
    let n = *c.prec_p.get_or_insert(10);
    let out = decompose2(&m, n, (mx, my))?;
    if c.verify {
        if !out.certificate.is_integral() {
            return Err(CliError::Verification("output is not integral".into()));
        }
        let back = compose2(&out.matrix, n, (mx, my))?;
        let same = back.entries().iter().zip(m.entries()).all(|(a, b)| {
            b.recast(a.ring()).map(|b| a.sub(&b).coeffs().iter().all(|x| x.is_zero())).unwrap_or(false)
        });
        if !same {
            return Err(CliError::Verification("the matrix does not recompose to the input".into()));
        }
    }
    let cert = out.certificate;
    Ok(json!({
        "matrix": FourJson::of(&out.matrix, "integral"),
        "certificate": CertificateJson { min_valuation: cert.min_valuation, max_denominator: cert.max_denominator, prec: cert.prec },
    }))
}
