use num_bigint::BigInt;

use super::*;
use crate::padic::{frobenius, ExtensionElement, PadicNumber, RingDescriptor};
use crate::series::{Algebra, TruncSeries1};

fn ring(m: u32, prec: i64, ap: i64) -> crate::padic::Ring {
    RingDescriptor::with_factors(3, ap, false, 0, m, prec).unwrap()
}

fn unit(m: u32, prec: i64, ap: i64) -> ExtensionElement {
    let r = ring(m, prec, ap);
    if m == 0 {
        ExtensionElement::from_i64(&r, 2)
    } else {
        ExtensionElement::unram_gen(&r).unwrap().add(&ExtensionElement::one(&r))
    }
}

#[test]
fn tables() {
    for ap in [3i64, -3, 2] {
        let t = recurrence_tables(3, ap, 12, 20, 10);
        assert_eq!(t.b_i(3), &BigInt::from(ap * ap - 1));
        assert_eq!(t.b_i(4), &BigInt::from(ap * ap * ap - 2 * ap));
        for i in 0..10 {
            assert_eq!(&t.b[i + 2], &(BigInt::from(ap) * &t.b[i + 1] - &t.b[i]));
        }
        let x2 = PadicNumber::from_ratio(3, ap * ap - 3, 9, 10).unwrap();
        assert!(t.x[2].eq_mod(&x2, 8));
        // (1, 0) A^k by direct powers
        let (mut r0, mut r1) = (BigInt::from(1), BigInt::from(0));
        for k in 1..=10usize {
            let n0 = &r0 * ap - &r1;
            let n1 = &r0 * 3;
            r0 = n0;
            r1 = n1;
            assert_eq!(t.numerators[k], r0);
            assert_eq!(&t.numerators[k - 1] * 3, r1);
        }
        if ap % 3 == 0 {
            for (k, x) in t.x.iter().enumerate() {
                assert!(x.valuation().unwrap_or(i64::MAX) >= -((k as i64 + 1) / 2), "k={k}");
            }
        }
    }
}

#[test]
fn iterates() {
    let u = unit(1, 12, 3);
    let f = f_series(&u, 12);
    assert_eq!(f_iterate(&u, 1, 12).unwrap(), f);
    let fphi = f_series(&frobenius(&u).unwrap(), 12);
    assert_eq!(f_iterate(&u, 2, 12).unwrap(), fphi.compose(&f).unwrap());
}

#[test]
fn logarithm() {
    for ap in [3i64, -3] {
        for m in [0u32, 1] {
            let u = unit(m, 30, ap);
            let l = honda_log(&u, 8, 12).unwrap();
            let s = &l.series;
            let one = ExtensionElement::one(s.ring());
            assert!(s.coeff(1).sub(&one).coord_valuation() >= 1);
            assert!(s.coeff(0).is_zero());
            let back = s.revert().unwrap().compose(s).unwrap();
            assert_eq!(back, TruncSeries1::var(s.ring(), 12));
            // denominators stay bounded, and the floor does not move with precision
            assert!(l.floor > -2);
            let l2 = honda_log(&u, 10, 12).unwrap();
            assert_eq!(l2.floor, l.floor);
            assert!(l2.series.with_prec(8).sub(&l.series.recast(l2.series.ring()).unwrap()).is_zero());
        }
    }
}

#[test]
fn group_law() {
    for ap in [3i64, -3] {
        for m in [0u32, 1] {
            let u = unit(m, 40, ap);
            let g = formal_group(&u, 6, 9).unwrap();
            assert!(g.law.min_valuation().map_or(true, |(_, v)| v >= 0));
            let x = TotalDegreeSeries::var(g.law.ring(), 2, 9, 0);
            let y = TotalDegreeSeries::var(g.law.ring(), 2, 9, 1);
            assert_eq!(g.with_zero(0).unwrap(), x);
            assert_eq!(g.with_zero(1).unwrap(), y);
            for (mono, c) in g.law.monomials().iter().zip(g.law.coeffs()) {
                let deg: u32 = mono.iter().sum();
                if deg == 1 {
                    assert_eq!(c, &ExtensionElement::one(g.law.ring()));
                }
                if deg == 0 {
                    assert!(c.is_zero());
                }
            }
            assert!(g.commutator().unwrap().coeffs().iter().all(|c| c.is_zero()));
            assert!(g.associator().unwrap().coeffs().iter().all(|c| c.is_zero()));
        }
    }
}

#[test]
fn lambda() {
    let r = ring(0, 12, 3);
    let u = ExtensionElement::from_i64(&r, 2);
    let a = lambda_nu(1, &u, 8, LambdaWeight::Definition).unwrap();
    let b = lambda_nu(3, &u, 8, LambdaWeight::Definition).unwrap();
    assert_eq!(a, b);
    assert_eq!(lambda_truncation(8), 15);
    let u1 = unit(1, 12, 3);
    for n in 0..4 {
        let l = lambda_nu(n, &u1, 8, LambdaWeight::Definition).unwrap();
        let lead = frobenius_inv_pow(&u1, n + 2).scale_i64(3);
        assert!(l.eq_mod(&lead, 2));
    }
}

fn frobenius_inv_pow(u: &ExtensionElement, k: u32) -> ExtensionElement {
    crate::padic::frobenius_pow(u, -(k as i64)).unwrap()
}

#[test]
fn point_table() {
    let u1 = unit(1, 14, 3);
    let u2 = ExtensionElement::unram_gen(u1.ring()).unwrap().scale_i64(4).add(&ExtensionElement::from_i64(u1.ring(), 1));
    let sum = u1.add(&u2);
    let conv = Convention::default();
    let t1 = point_log_table(3, &u1, 8, conv).unwrap();
    let t2 = point_log_table(3, &u2, 8, conv).unwrap();
    let ts = point_log_table(3, &sum, 8, conv).unwrap();
    for n in 0..=3 {
        assert_eq!(ts.entries[n], t1.entries[n].add(&t2.entries[n]));
    }
    let u = ExtensionElement::from_i64(&ring(0, 14, 3), 1);
    let a = point_log(1, &u, 6, conv).unwrap();
    let b = point_log(1, &u, 8, conv).unwrap();
    assert!(a.eq_mod(&b.with_prec(6).recast(a.ring()).unwrap(), 6));
}

#[test]
fn traces() {
    for ap in [3i64, -3] {
        let report = verify_traces(3, ap, 3, 1, 8).unwrap();
        let selected = report.selected().expect("some convention passes");
        assert_eq!(selected.convention, Convention::default());
        for r in &report.reports {
            for c in &r.cases {
                if c.relation == Relation::Unramified {
                    assert!(c.pass, "{:?} {:?}", r.convention, c);
                }
            }
        }
        let def = report
            .reports
            .iter()
            .find(|r| r.convention == Convention { weight: LambdaWeight::Definition, pi_form: PiForm::Proof })
            .unwrap();
        assert!(!def.passes());
    }
}

