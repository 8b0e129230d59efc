use super::*;
use crate::padic::{RingDescriptor, RingKind};
use crate::series::{Algebra, TruncSeries1};

#[test]
fn margin_probe() {
    for cap in [9usize, 27, 81] {
        let t = std::time::Instant::now();
        let m = input_margin(3, 3, cap).unwrap();
        eprintln!("cap {cap} margin {m} in {:?}", t.elapsed());
    }
}

#[test]
fn round_trip_small() {
    let cap = 27;
    let m = input_margin(3, 3, cap).unwrap();
    let base = RingDescriptor::new(3, 3, RingKind::Base, 12 + m).unwrap();
    let s = TruncSeries1::from_i64s(&base, &[1, 2, 0, 5, 7, 1, 1, 2], cap);
    let f = TruncSeries1::from_i64s(&base, &[3, 1, 4, 1, 5, 9, 2, 6], cap);
    let pair = LPair::new(s, f, Provenance::Synthetic).unwrap();
    let t = std::time::Instant::now();
    let l = compose1(&pair, 12 + m, cap).unwrap();
    let back = decompose1(&l, 12, cap).unwrap();
    eprintln!("{:?}", t.elapsed());
    assert_eq!(back.sharp, pair.sharp.with_prec(12));
    assert_eq!(back.flat, pair.flat.with_prec(12));
}


fn sample_pair(prec: i64, cap: usize) -> (TruncSeries1, TruncSeries1) {
    let base = RingDescriptor::new(3, 3, RingKind::Base, prec).unwrap();
    let s = TruncSeries1::from_i64s(&base, &[1, 2, 0, 5, 7, 1, 1, 2, 8, 4, 0, 2], cap);
    let f = TruncSeries1::from_i64s(&base, &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8], cap);
    (s, f)
}

#[test]
fn tower_from_pair_satisfies_three_term_relation() {
    let (s, f) = sample_pair(10, 28);
    let theta = tower_from_pair(&s, &f, 3).unwrap();
    assert_eq!(theta.len(), 4);
    for d in three_term_defects(&theta).unwrap() {
        assert!(d.is_zero(), "{d:?}");
    }
}

#[test]
fn stabilized_levels_are_compatible() {
    let (s, f) = sample_pair(10, 28);
    let theta = tower_from_pair(&s, &f, 3).unwrap();
    for xi in [Root::Alpha, Root::Beta] {
        let st = stabilize(&theta, xi).unwrap();
        assert_eq!(st.top(), 3);
        for (n, ok) in st.compatibility().unwrap() {
            assert!(ok, "{} level {n}", xi.name());
        }
    }
}

#[test]
fn stabilization_detects_perturbation() {
    let (s, f) = sample_pair(10, 28);
    let mut theta = tower_from_pair(&s, &f, 3).unwrap();
    let ring = theta[2].ring().clone();
    let bump = crate::series::GroupRingElement::group_element(&ring, 2, 1).scale_i64(9);
    theta[2] = theta[2].add(&bump);
    assert!(!three_term_defects(&theta).unwrap().iter().all(|d| d.is_zero()));
    let st = stabilize(&theta, Root::Alpha).unwrap();
    assert!(!st.compatibility().unwrap().iter().all(|(_, ok)| *ok));
}

#[test]
fn finite_decomposition_recovers_pair() {
    let (s, f) = sample_pair(10, 28);
    let theta = tower_from_pair(&s, &f, 3).unwrap();
    for n in 1..=3u32 {
        let d = decompose_finite(&theta[n as usize], &theta[n as usize - 1], n, 10).unwrap();
        let truth = pair_at_level(&s, &f, n).unwrap();
        assert!(d.agrees_on_determined(&truth), "level {n}");
        assert!(d.determined_prec > 0);
        assert_eq!(d.undetermined_levels, (1..=n).collect::<Vec<_>>());
    }
}

#[test]
fn finite_decomposition_of_zero_is_zero() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 8).unwrap();
    let z = TruncSeries1::zero(&base, 28);
    let theta = tower_from_pair(&z, &z, 2).unwrap();
    let d = decompose_finite(&theta[2], &theta[1], 2, 8).unwrap();
    assert!(d.agrees_on_determined(&pair_at_level(&z, &z, 2).unwrap()));
}

#[test]
fn finite_decomposition_rejects_inconsistent_data() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 8).unwrap();
    let one = crate::series::GroupRingElement::one(&base, 1);
    let top = crate::series::GroupRingElement::group_element(&base, 2, 1);
    match decompose_finite(&top, &one, 2, 8) {
        Err(crate::Error::NotDecomposable(_)) => {}
        other => panic!("{other:?}"),
    }
}

fn ints2(base: &crate::padic::Ring, caps: (usize, usize), seed: i64) -> crate::series::TruncSeries2 {
    let mut terms = Vec::new();
    for i in 0..caps.0 {
        for j in 0..caps.1 {
            terms.push((i, j, (seed * 7 + (i * 5 + j * 3) as i64 * 11) % 23 - 11));
        }
    }
    crate::series::TruncSeries2::from_terms(base, caps, &terms)
}

#[test]
fn two_variable_margin_probe() {
    let t = std::time::Instant::now();
    let m = input_margin2(3, 3, (27, 27)).unwrap();
    eprintln!("caps (27,27) margin {m} in {:?}", t.elapsed());
}

#[test]
fn two_variable_round_trip() {
    let caps = (9, 9);
    let m = input_margin2(3, 3, caps).unwrap();
    let base = RingDescriptor::new(3, 3, RingKind::Base, 8 + m).unwrap();
    let four = crate::series::Mat2::new(ints2(&base, caps, 1), ints2(&base, caps, 2), ints2(&base, caps, 3), ints2(&base, caps, 4));
    let l = compose2(&four, 8 + m, caps).unwrap();
    let back = decompose2(&l, 8, caps).unwrap();
    assert!(back.certificate.is_integral());
    for (a, b) in back.matrix.entries().iter().zip(four.entries()) {
        assert_eq!(**a, b.map(|c| c.with_prec(8)).recast(&base.at_prec(8).unwrap()).unwrap());
    }
}

fn outer(c: &[TruncSeries1; 2], r: &[TruncSeries1; 2]) -> crate::series::Mat2<TruncSeries1> {
    crate::series::Mat2::new(c[0].mul(&r[0]), c[0].mul(&r[1]), c[1].mul(&r[0]), c[1].mul(&r[1]))
}

#[test]
fn rank_one_recovers_normalized_column() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 12).unwrap();
    let cap = 20;
    let col = [
        TruncSeries1::from_i64s(&base, &[9, 3, 6, 1, 2], cap),
        TruncSeries1::from_i64s(&base, &[2, 5, 1], cap),
    ];
    let row = [TruncSeries1::from_i64s(&base, &[3, 1, 4], cap), TruncSeries1::from_i64s(&base, &[0, 27, 9, 3], cap)];
    let m = outer(&col, &row);
    let Rank1Outcome::Factored(f) = rank1_factor(&m).unwrap() else { panic!("not factored") };
    assert_eq!(f.lead, 0);
    let want = normalize_column(&col).unwrap();
    let c = f.cap();
    assert_eq!(f.col[0], want[0].with_cap(c));
    assert_eq!(f.col[1], want[1].with_cap(c));
    for (a, b) in f.outer().entries().iter().zip(m.entries()) {
        assert_eq!(**a, b.with_cap(c));
    }
}

#[test]
fn rank_one_rejects_full_rank_and_zero() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 10).unwrap();
    let cap = 12;
    let one = TruncSeries1::one(&base, cap);
    let z = TruncSeries1::zero(&base, cap);
    let x = TruncSeries1::var(&base, cap);
    let m = crate::series::Mat2::new(x.clone(), z.clone(), z.clone(), one.clone());
    match rank1_factor(&m).unwrap() {
        Rank1Outcome::NotRankOne { det } => assert_eq!(det, x),
        other => panic!("{other:?}"),
    }
    let zero = crate::series::Mat2::new(z.clone(), z.clone(), z.clone(), z);
    assert!(matches!(rank1_factor(&zero).unwrap(), Rank1Outcome::Degenerate));
}

#[test]
fn restriction_to_diagonal() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 10).unwrap();
    let caps = (8, 8);
    let diff = crate::series::TruncSeries2::from_terms(&base, caps, &[(1, 0, 1), (0, 1, -1)]);
    assert!(restrict_diag(&diff).is_zero());
    let xy = crate::series::TruncSeries2::from_terms(&base, caps, &[(1, 1, 1)]);
    assert_eq!(restrict_diag(&xy), TruncSeries1::from_i64s(&base, &[0, 0, 1], 8));
}

#[test]
fn generator_reference_sequence() {
    let mut g = gen::Generator::new(7);
    let v: Vec<u64> = (0..4).map(|_| g.next_u64()).collect();
    assert_eq!(v, [2910824217569608635, 3098856782162503994, 12991601491111613745, 13406010708265417443]);
    let mut g = gen::Generator::new(7);
    assert_eq!(g.residue(3, 12), num_bigint::BigUint::from(284849u32));
}

#[test]
fn generated_towers_stabilize() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 10).unwrap();
    let mut g = gen::Generator::new(11);
    let theta = g.theta_tower(&base, 4).unwrap();
    assert!(three_term_defects(&theta).unwrap().iter().all(|d| d.is_zero()));
    for xi in [Root::Alpha, Root::Beta] {
        let st = stabilize(&theta, xi).unwrap();
        assert!(st.compatibility().unwrap().iter().all(|(_, ok)| *ok));
    }
}

#[test]
fn generated_prepared_inputs_have_planted_invariants() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 10).unwrap();
    let mut g = gen::Generator::new(3);
    for _ in 0..20 {
        let (f, mu, lambda) = g.prepared(&base, 16);
        let inv = crate::weierstrass::newton_invariants(&f).unwrap();
        assert_eq!((inv.mu, inv.lambda), (mu, lambda));
    }
}
