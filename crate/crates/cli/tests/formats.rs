use proptest::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use sharpflat::format::{Coord, ElementJson, Scalar, SeriesJson};
use sharpflat_core::decompose::gen::Generator;
use sharpflat_core::padic::{PadicNumber, RingDescriptor, RingKind};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_round_trip(x in -1_000_000_000i64..1_000_000_000, shift in -3i64..4, prec in 1i64..30) {
        let a = PadicNumber::from_i64(3, x, prec).shift(shift);
        let s = Scalar::of(&a);
        let text = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_padic(3).unwrap(), a);
    }

    #[test]
    fn series_round_trip(seed in any::<u64>(), cap in 1usize..12, quad in any::<bool>()) {
        let ring = RingDescriptor::with_factors(3, -3, quad, 0, 0, 9).unwrap();
        let s = Generator::new(seed).series(&ring, cap, cap);
        let text = serde_json::to_string(&SeriesJson::of1(&s)).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to1().unwrap(), s);
    }
}

#[test]
fn integer_coordinates_are_read_at_ring_precision() {
    let ring = RingDescriptor::new(3, 3, RingKind::Base, 6).unwrap();
    for c in [json!("-81"), json!(-81), json!(["-81"])] {
        let e: ElementJson = serde_json::from_value(c).unwrap();
        let x = sharpflat::format::element_from(&ring, &e).unwrap();
        assert_eq!(x.coords()[0], PadicNumber::from_i64(3, -81, 6));
    }
    let bad: ElementJson = serde_json::from_value(json!(["1", "2"])).unwrap();
    assert!(sharpflat::format::element_from(&ring, &bad).is_err());
    assert!(matches!(serde_json::from_value::<Coord>(json!(1.5)), Err(_)));
}

#[test]
fn fractional_coordinate_valuation_is_rejected() {
    let s = Scalar { val: Some("1/2".into()), mantissa: "1".into(), prec: Some(4) };
    assert!(s.to_padic(3).is_err());
}

#[test]
fn digest_covers_config_and_result() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pair.json");
    let code = sharpflat::run(["sharpflat", "gen", "pair", "--seed", "1", "--prec-x", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let body = json!({ "config": doc["config"], "result": doc["result"] });
    let want = format!("sha256:{}", hex::encode(Sha256::digest(serde_json::to_vec(&body).unwrap())));
    assert_eq!(doc["digest"], want);
    assert_eq!(doc["config"]["seed"], 1);
    assert_eq!(doc["config"]["precP"], 12);
}
