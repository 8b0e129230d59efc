use super::*;
use crate::padic::{ExtensionElement, RingDescriptor, RingKind};
use crate::series::{
    eval_at, log_one_plus, omega, Algebra, GroupRingElement, Mat2, TruncSeries1,
};

fn base(prec: i64) -> crate::padic::Ring {
    RingDescriptor::new(3, 3, RingKind::Base, prec).unwrap()
}

#[test]
fn c_matrix_shape() {
    let r = base(10);
    let c = c_matrix(&r, 1, 6).unwrap();
    let at0: Vec<i64> = c.entries().iter().map(|s| s.coeff(0).coords()[0].to_i64().unwrap()).collect();
    assert_eq!(at0, vec![3, 1, -3, 0]);
    for n in 1..4 {
        let c = c_matrix(&r, n, 30).unwrap();
        assert_eq!(c.det(), crate::series::cyclotomic_poly(&r, n, 30));
    }
}

#[test]
fn log_matrix_at_zero_and_telescoping() {
    for ap in [3, -3, 0] {
        let (n, m) = (6, 27);
        let res = log_matrix(3, ap, n, m).unwrap();
        let quad = res.matrix.get(0, 0).ring().clone();
        // A'^-1 = [[0, -1], [p, a_p]] / p
        let inv = Mat2::new(
            ExtensionElement::zero(&quad),
            ExtensionElement::from_i64(&quad, -1),
            ExtensionElement::from_i64(&quad, 3),
            ExtensionElement::from_i64(&quad, ap),
        );
        let q = Mat2::new(
            ExtensionElement::from_i64(&quad, -1),
            ExtensionElement::from_i64(&quad, -1),
            ExtensionElement::beta(&quad).unwrap(),
            ExtensionElement::alpha(&quad).unwrap(),
        );
        let want = inv.mul(&inv).mul(&q).map(|c| c.shift(-2));
        let got = res.matrix.map(|s| s.coeff(0).clone());
        assert_eq!(got, want, "a_p = {ap}");
        let longer = log_matrix_with(3, ap, n, m, res.depth + 1, res.working_prec + 1).unwrap();
        assert_eq!(longer.matrix, res.matrix);
        assert!(res.certificate.tail_valuation >= crate::Valuation::from_integer(n));
        for s in res.matrix.entries() {
            for c in s.coeffs() {
                if !c.is_zero() {
                    assert!(c.valuation().unwrap() >= res.valuation_floor);
                }
            }
        }
    }
    assert!(matches!(log_matrix_with(3, 3, 6, 27, 20, 8), Err(crate::Error::PrecisionExhausted(_))));
}

#[test]
fn values_at_roots() {
    for (ap, level, cap) in [(3, 1, 27), (-3, 1, 27), (3, 2, 81), (-3, 2, 81)] {
        let prec = 6;
        let lm = log_matrix(3, ap, prec, cap).unwrap();
        let at = log_matrix_at_root(3, ap, level, prec).unwrap();
        let ring = at.get(0, 0).ring().clone();
        let x = ExtensionElement::zeta(&ring).unwrap().sub(&ExtensionElement::one(&ring));
        for i in 0..2 {
            for j in 0..2 {
                let e = eval_at(lm.matrix.get(i, j), &x, LogMatrixResult::tail_floor()).unwrap();
                assert!(e.tail.unwrap() >= crate::Valuation::from_integer(prec));
                assert_eq!(&e.value, at.get(i, j), "a_p {ap} level {level} entry {i}{j}");
            }
        }
        let next = root_product(3, ap, level, level + 1, prec).unwrap();
        assert_eq!(next, at);
    }
}

#[test]
fn h_matrix_relations() {
    let r = base(12);
    let (h1, _) = h_matrices(&r, 1).unwrap();
    let cap = h1.get(0, 0).cap();
    let phi = crate::series::cyclotomic_poly(&r, 1, cap);
    assert_eq!(h1, Mat2::new(TruncSeries1::one(&r, cap).neg(), TruncSeries1::zero(&r, cap), TruncSeries1::zero(&r, cap), phi.neg()));
    for n in 1..=4 {
        let (h, perp) = h_matrices(&r, n).unwrap();
        let cap = h.get(0, 0).cap();
        let x = TruncSeries1::var(&r, cap);
        assert_eq!(h.det().mul(&x), omega(&r, n, cap));
        let (hg, pg) = h_matrices_at_level(&r, n).unwrap();
        assert!(pg.mul(&hg).is_zero());
        assert!(hg.mul(&pg).is_zero());
        let _ = perp;
    }
}

#[test]
fn membership() {
    let r = base(8);
    let n = 2;
    let (h, _) = h_matrices_at_level(&r, n).unwrap();
    let ints = |xs: &[i64]| {
        GroupRingElement::from_coeffs(&r, n, xs.iter().map(|&x| ExtensionElement::from_i64(&r, x)).collect()).unwrap()
    };
    let a = ints(&[1, 2, 0, 5, 7, 1, 0, 3, 2]);
    let b = ints(&[4, 0, 1, 1, 9, 2, 6, 0, 1]);
    let v = h.left_mul(&[a, b]);
    match kernel_membership(&v, n).unwrap() {
        Membership::InRowSpan { witness, .. } => assert_eq!(h.left_mul(&witness), v),
        other => panic!("{other:?}"),
    }
    let one = GroupRingElement::one(&r, n);
    let zero = GroupRingElement::zero(&r, n);
    assert!(matches!(kernel_membership(&[one, zero.clone()], n).unwrap(), Membership::NotInRowSpan { .. }));
    match kernel_membership(&[zero.clone(), zero.clone()], n).unwrap() {
        Membership::InRowSpan { witness, .. } => assert!(witness.iter().all(|w| w.is_zero())),
        other => panic!("{other:?}"),
    }
}

#[test]
fn growth() {
    let r = base(20);
    let lg = log_one_plus(&r, 81).unwrap();
    let g = growth_profile(&[lg]).unwrap();
    assert!((g.order - 1.0).abs() <= 0.1, "{g:?}");
    let unit = TruncSeries1::from_i64s(&r, &[1, 2, 3, 4, 5, 6], 81);
    assert!(growth_profile(&[unit]).unwrap().order.abs() <= 0.1);
    for cap in [27, 81] {
        let lm = log_matrix(3, 3, 8, cap).unwrap();
        let entries: Vec<TruncSeries1> = lm.matrix.entries().iter().map(|s| (*s).clone()).collect();
        for e in &entries {
            let g = growth_profile(core::slice::from_ref(e)).unwrap();
            assert!(g.order <= 0.6, "cap {cap}: {} {:?}", g.order, g.samples);
        }
    }
}
