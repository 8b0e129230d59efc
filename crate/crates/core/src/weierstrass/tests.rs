use super::*;
use crate::padic::{ExtensionElement, RingDescriptor, RingKind};
use crate::series::{Algebra, TruncSeries1, TruncSeries2, Var};

#[test]
fn invariants_examples() {
    let r = RingDescriptor::new(3, 3, RingKind::Base, 12).unwrap();
    let f = TruncSeries1::from_i64s(&r, &[81, 27, 0, 9], 10);
    assert_eq!(newton_invariants(&f).unwrap(), Invariants { mu: 2, lambda: 3 });
    let one = TruncSeries1::one(&r, 5);
    assert_eq!(newton_invariants(&one).unwrap(), Invariants { mu: 0, lambda: 0 });
    let g = TruncSeries1::from_i64s(&r, &[3, 1, 5], 5);
    assert_eq!(newton_invariants(&g.scale_i64(3)).unwrap(), Invariants { mu: 1, lambda: 1 });
    let z = TruncSeries1::zero(&r, 5);
    assert!(matches!(newton_invariants(&z), Err(crate::Error::ZeroAtPrecision)));
}

#[test]
fn prep1_recovers_parts() {
    let r = RingDescriptor::new(3, 3, RingKind::Base, 12).unwrap();
    let d = TruncSeries1::from_i64s(&r, &[3, 3, 0, 1], 40);
    let u = TruncSeries1::from_i64s(&r, &[1, 3], 40);
    let f = d.mul(&u).scale_i64(9);
    let prep = prep1(&f).unwrap();
    assert_eq!((prep.mu, prep.lambda), (2, 3));
    let want: Vec<ExtensionElement> = [3, 3, 0, 1].iter().map(|&c| ExtensionElement::from_i64(&r, c)).collect();
    for (a, b) in prep.distinguished.iter().zip(&want) {
        assert!(a.eq_mod(b, prep.certified_prec), "{a:?} vs {b:?}");
    }
    assert_eq!(prep.recompose(), f);

    let xk = TruncSeries1::monomial(&ExtensionElement::one(&r), 4, 10);
    let prep = prep1(&xk).unwrap();
    assert_eq!((prep.mu, prep.lambda), (0, 4));
    assert_eq!(prep.unit, TruncSeries1::one(&r, 10));
}

#[test]
fn prep2_recovers_parts() {
    let r = RingDescriptor::new(3, 3, RingKind::Base, 8).unwrap();
    let caps = (12, 10);
    let a = TruncSeries2::from_terms(&r, caps, &[(1, 0, 1), (0, 0, 3)]);
    let b = TruncSeries2::from_terms(&r, caps, &[(0, 2, 1), (1, 1, 3), (0, 0, 3)]);
    let u = TruncSeries2::from_terms(&r, caps, &[(0, 0, 1), (1, 1, 3)]);
    let f = a.mul(&b).mul(&u);
    let prep = prep2(&f, VariableOrder::XThenY).unwrap();
    assert_eq!(prep.mu, 0);
    assert_eq!(prep.factors.len(), 2);
    assert_eq!(prep.factors[0].var, Var::X);
    assert_eq!(prep.factors[0].degree(), 1);
    assert_eq!(prep.factors[1].var, Var::Y);
    assert_eq!(prep.factors[1].degree(), 2);
    assert!(prep.factors.iter().all(|f| f.in_ideal()));
    assert_eq!(prep.factors[0].to_series(caps), a);
    assert_eq!(prep.factors[1].to_series(caps), b);
    assert_eq!(prep.recompose(), f);

    assert!(matches!(prep2(&f, VariableOrder::YThenX), Err(crate::Error::NotPreparable)));
    let g = f.swap_vars();
    let prep = prep2(&g, VariableOrder::YThenX).unwrap();
    assert_eq!(prep.factors[0].var, Var::Y);
    assert_eq!(prep.factors[0].to_series(g.caps()), a.swap_vars());
    assert!(prep.factors.iter().all(|f| f.in_ideal()));
    assert_eq!(prep.recompose(), g);

    let c = TruncSeries2::from_terms(&r, caps, &[(0, 0, 3)]);
    let prep = prep2(&c, VariableOrder::XThenY).unwrap();
    assert_eq!(prep.mu, 1);
    assert!(prep.factors.is_empty());
    assert_eq!(prep.unit, TruncSeries2::one(&r, caps));

    let bad = TruncSeries2::from_terms(&r, caps, &[(0, 0, 3), (1, 1, 1)]);
    assert!(matches!(prep2(&bad, VariableOrder::XThenY), Err(crate::Error::NotPreparable)));
}
