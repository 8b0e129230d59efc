use serde_json::{json, Value};

use sharpflat_core::decompose::{decompose_finite, stabilize, three_term_defects, Root};
use sharpflat_core::series::Algebra;

use crate::config::{read_payload, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::{GroupRingJson, TowerJson};
use crate::Xi;

pub(super) fn run(c: &mut RunConfig, xi: Xi) -> CliResult<Value> {
    let input: TowerJson = read_payload(c.input(0)?)?;
    if (input.p, input.ap) != (c.p, c.ap) {
        return Err(CliError::malformed(format!("tower is for p = {}, ap = {}", input.p, input.ap)));
    }
    let n = *c.prec_p.get_or_insert(10);
    let theta = input.to_tower(n)?;
    let root = match xi {
        Xi::Alpha => Root::Alpha,
        Xi::Beta => Root::Beta,
    };
    let defects = three_term_defects(&theta)?;
    let relation: Vec<Value> =
        defects.iter().enumerate().map(|(i, d)| json!({ "n": i + 1, "holds": d.is_zero() })).collect();
    let st = stabilize(&theta, root)?;
    let compat = st.compatibility()?;
    if c.verify && defects.iter().all(|d| d.is_zero()) && !compat.iter().all(|(_, ok)| *ok) {
        return Err(CliError::Verification("a tower satisfying the relation failed to stabilize".into()));
    }
    let mut out = json!({
        "xi": root.name(),
        "levels": st.levels.iter().map(GroupRingJson::of).collect::<Vec<_>>(),
        "threeTermRelation": relation,
        "compatibility": compat.iter().map(|(n, ok)| json!({ "n": n, "holds": ok })).collect::<Vec<_>>(),
    });
    if let Some(level) = c.level {
        if level == 0 || level as usize >= theta.len() {
            return Err(CliError::malformed(format!("--level {level} outside 1..={}", theta.len() - 1)));
        }
        let k = level as usize;
        let fd = decompose_finite(&theta[k], &theta[k - 1], level, n)?;
        if c.verify {
            let img = fd.image(&fd.pair);
            let want = [theta[k].clone(), theta[k - 1].lift_nu()];
            if !img.iter().zip(&want).all(|(a, b)| a.sub(b).is_zero()) {
                return Err(CliError::Verification("finite pair does not reproduce the tower".into()));
            }
        }
        out["finite"] = json!({
            "level": level,
            "pair": [GroupRingJson::of(&fd.pair[0]), GroupRingJson::of(&fd.pair[1])],
            "determinedPrec": fd.determined_prec,
            "undeterminedLevels": fd.undetermined_levels,
        });
    }
    Ok(out)
}
