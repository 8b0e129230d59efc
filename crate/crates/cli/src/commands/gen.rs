use serde_json::{json, Value};

use sharpflat_core::decompose::gen::Generator;
use sharpflat_core::decompose::{compose1, compose2, input_margin, input_margin2, FourMatrix, LPair};
use sharpflat_core::padic::{ExtensionElement, PadicNumber, Ring, RingDescriptor, RingKind};
use sharpflat_core::series::{TruncSeries1, TruncSeries2};

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::format::{FourJson, LFunctionsJson, PairJson, SeriesJson, TowerJson};
use crate::GenKind;

/// Reads each coordinate as an exact integer and re-embeds it at `ring`'s
/// precision, so that wider data reduces back to the same values.
fn lift(x: &ExtensionElement, ring: &Ring) -> ExtensionElement {
    let coords = x
        .coords()
        .iter()
        .map(|c| {
            let (k, e) = c.to_scaled();
            PadicNumber::from_bigint(ring.p(), &k, ring.prec() - e).shift(e)
        })
        .collect();
    ExtensionElement::from_coords(ring, coords).expect("same shape")
}

fn lift1(s: &TruncSeries1, ring: &Ring) -> TruncSeries1 {
    TruncSeries1::from_coeffs(ring, s.coeffs().iter().map(|c| lift(c, ring)).collect()).expect("cap")
}

fn lift2(s: &TruncSeries2, ring: &Ring) -> TruncSeries2 {
    TruncSeries2::from_coeffs(ring, s.caps(), s.coeffs().iter().map(|c| lift(c, ring)).collect()).expect("caps")
}

pub(super) fn run(c: &mut RunConfig, kind: crate::GenKind) -> CliResult<Value> {
    let seed = *c.seed.get_or_insert(0);
    let mut gen = Generator::new(seed);
    let (p, ap) = (c.p, c.ap);
    match kind {
        GenKind::Pair | GenKind::LalphaLbeta => {
            let n = *c.prec_p.get_or_insert(12);
            let cap = *c.prec_x.get_or_insert(81);
            let base = RingDescriptor::new(p, ap, RingKind::Base, n)?;
            let pair = gen.pair(&base, cap)?;
            if matches!(kind, GenKind::Pair) {
                return Ok(json!({ "pair": PairJson::of(&pair) }));
            }
            let wide = base.at_prec(n + input_margin(p, ap, cap)?)?;
            let lifted = LPair::new(lift1(&pair.sharp, &wide), lift1(&pair.flat, &wide), pair.provenance)?;
            let l = compose1(&lifted, wide.prec(), cap)?;
            Ok(json!(LFunctionsJson { lalpha: SeriesJson::of1(&l[0]), lbeta: SeriesJson::of1(&l[1]) }))
        }
        GenKind::Four | GenKind::FourL => {
            let n = *c.prec_p.get_or_insert(10);
            let caps = (*c.prec_x.get_or_insert(27), *c.prec_y.get_or_insert(27));
            let base = RingDescriptor::new(p, ap, RingKind::Base, n)?;
            let m = gen.four(&base, caps);
            if matches!(kind, GenKind::Four) {
                return Ok(json!({ "matrix": FourJson::of(&m, "integral") }));
            }
            let wide = base.at_prec(n + input_margin2(p, ap, caps)?)?;
            let lifted: FourMatrix = m.map(|e| lift2(e, &wide));
            let l = compose2(&lifted, wide.prec(), caps)?;
            Ok(json!(FourJson::of(&l, "alpha-beta")))
        }
        GenKind::ThetaTower => {
            let n = *c.prec_p.get_or_insert(10);
            let n_max = *c.nmax.get_or_insert(3);
            let base = RingDescriptor::new(p, ap, RingKind::Base, n)?;
            let theta = gen.theta_tower(&base, n_max)?;
            Ok(json!(TowerJson::of(&theta, p, ap)))
        }
        GenKind::Series => {
            let n = *c.prec_p.get_or_insert(10);
            let cap = *c.prec_x.get_or_insert(20);
            let base = RingDescriptor::new(p, ap, RingKind::Base, n)?;
            let (f, mu, lambda) = gen.prepared(&base, cap);
            let mut out = json!(SeriesJson::of1(&f));
            out["planted"] = json!({ "mu": mu, "lambda": lambda });
            Ok(out)
        }
        GenKind::Series2 => {
            let n = *c.prec_p.get_or_insert(8);
            let caps = (*c.prec_x.get_or_insert(12), *c.prec_y.get_or_insert(10));
            let base = RingDescriptor::new(p, ap, RingKind::Base, n)?;
            let (f, mu, l1, l2) = gen.prepared2(&base, caps);
            let mut out = json!(SeriesJson::of2(&f));
            out["planted"] = json!({ "mu": mu, "lambdaX": l1, "lambdaY": l2 });
            Ok(out)
        }
    }
}
