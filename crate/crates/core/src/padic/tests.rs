use crate::padic::frobenius::eval_int_poly;
use super::*;
use crate::error::Error;
use num_bigint::BigInt;

const N: i64 = 10;

fn base() -> Ring {
    RingDescriptor::new(3, 3, RingKind::Base, N).unwrap()
}

fn quad(ap: i64) -> Ring {
    RingDescriptor::new(3, ap, RingKind::Quad, N).unwrap()
}

fn int(r: &Ring, x: i64) -> ExtensionElement {
    ExtensionElement::from_i64(r, x)
}

#[test]
fn integer_arithmetic() {
    let r = base();
    assert!(int(&r, 4).mul(&int(&r, -2)).agrees(&int(&r, -8)));
    let q = int(&r, 1).div(&int(&r, 4)).unwrap();
    assert!(q.mul(&int(&r, 4)).agrees(&int(&r, 1)));
    assert_eq!(q.prec(), N);
}

#[test]
fn scalar_precision_rules() {
    let a = PadicNumber::from_i64(3, 18, 10);
    assert_eq!(a.valuation(), Some(2));
    let b = PadicNumber::from_i64(3, 5, 4);
    let c = a.mul(&b);
    assert_eq!(c.prec(), Some(6));
    assert_eq!(a.add(&b).prec(), Some(4));
    let d = b.div(&a).unwrap();
    assert_eq!(d.valuation(), Some(-2));
    assert_eq!(d.prec(), Some(-2 + 4));
    assert!(PadicNumber::from_i64(3, 81, 4).is_zero());
    assert_eq!(PadicNumber::from_i64(3, 1 + 3, 5).valuation(), Some(0));
}

#[test]
fn geometric_series() {
    let r = base();
    let q = int(&r, 1).div(&int(&r, 4)).unwrap();
    let mut s = 0i64;
    let mut t = 1i64;
    for _ in 0..N {
        s += t;
        t *= -3;
    }
    assert!(q.agrees(&int(&r, s)));
}

#[test]
fn quadratic_roots() {
    for ap in [3, -3, 0, 6] {
        let r = quad(ap);
        let a = ExtensionElement::alpha(&r).unwrap();
        let b = ExtensionElement::beta(&r).unwrap();
        assert!(a.mul(&b).agrees(&int(&r, 3)));
        assert!(a.add(&b).agrees(&int(&r, ap)));
        assert_eq!(a.valuation().unwrap(), Valuation::new(1, 2));
        assert_eq!(b.valuation().unwrap(), Valuation::new(1, 2));
        let ai = a.inv().unwrap();
        assert!(ai.mul(&a).agrees(&int(&r, 1)));
        assert!(ai.agrees(&b.div(&int(&r, 3)).unwrap()));
    }
}

#[test]
fn valuations() {
    let r = base();
    assert_eq!(int(&r, 18).valuation().unwrap(), Valuation::from_integer(2));
    assert_eq!(int(&r, 4).valuation().unwrap(), Valuation::from_integer(0));
    assert!(matches!(
        ExtensionElement::zero_at(&r, 5).valuation(),
        Err(Error::IndistinguishableFromZero { .. })
    ));
    let c = RingDescriptor::new(3, 3, RingKind::Cyc(2), N).unwrap();
    let pi = ExtensionElement::zeta(&c).unwrap().sub(&int(&c, 1));
    assert_eq!(pi.valuation().unwrap(), Valuation::new(1, 6));
    assert_eq!(pi.pow(6).valuation().unwrap(), Valuation::from_integer(1));
    let inv = pi.inv().unwrap();
    assert!(inv.mul(&pi).agrees(&int(&c, 1)));
}

#[test]
fn frobenius_and_teichmuller() {
    let r = RingDescriptor::new(3, 3, RingKind::Unram(1), 8).unwrap();
    let one = ExtensionElement::one(&r);
    assert!(frobenius(&one).unwrap().agrees(&one));
    let t = teichmuller(&r, &[1, 2, 0]).unwrap();
    assert!(t.pow(26).agrees(&one));
    assert!(frobenius(&t).unwrap().agrees(&t.pow(3)));
    let w = ExtensionElement::unram_gen(&r).unwrap().add(&int(&r, 5));
    assert!(frobenius_pow(&w, 3).unwrap().agrees(&w));
    assert!(frobenius(&inverse_frobenius(&w).unwrap()).unwrap().agrees(&w));
    let b = base();
    assert!(teichmuller(&b, &[2]).unwrap().agrees(&int(&b, -1)));
    assert!(teichmuller(&b, &[1]).unwrap().agrees(&int(&b, 1)));
    assert_eq!(teichmuller(&b, &[0]).unwrap_err(), Error::ZeroResidue);
}

#[test]
fn cyclotomic_traces() {
    let c1 = RingDescriptor::new(3, 3, RingKind::Cyc(1), N).unwrap();
    let c2 = RingDescriptor::new(3, 3, RingKind::Cyc(2), N).unwrap();
    let b = base();
    let z3 = ExtensionElement::zeta(&c1).unwrap();
    assert!(trace(&z3, &b).unwrap().agrees(&int(&b, -1)));
    let z9 = ExtensionElement::zeta(&c2).unwrap();
    assert!(trace(&z9, &c1).unwrap().is_zero());
    let emb = Embedding::new(&c1, &c2).unwrap();
    let y = emb.apply(&z3.add(&int(&c1, 2))).unwrap();
    assert!(trace(&y, &c1).unwrap().agrees(&z3.add(&int(&c1, 2)).scale_i64(3)));
    assert!(norm(&z3, &b).unwrap().agrees(&int(&b, 1)));
}

fn matrix_trace(x: &ExtensionElement) -> PadicNumber {
    let r = x.ring();
    let mut acc = PadicNumber::exact_zero(r.p());
    for i in 0..r.rank() {
        let (q, c, u) = r.split_index(i);
        let y = x.mul(&ExtensionElement::basis(r, q, c, u));
        acc = acc.add(&y.coords()[i]);
    }
    acc
}

#[test]
fn trace_matches_multiplication_matrix() {
    let big = RingDescriptor::new(3, 3, RingKind::Composite { n: 2, m: 1 }, 6).unwrap();
    let mid = RingDescriptor::new(3, 3, RingKind::Composite { n: 1, m: 0 }, 6).unwrap();
    let b = RingDescriptor::new(3, 3, RingKind::Base, 6).unwrap();
    let ints: Vec<BigInt> = (0..big.rank()).map(|i| BigInt::from((i * i + 3 * i + 1) as i64 % 11 - 5)).collect();
    let x = ExtensionElement::from_ints(&big, 0, &ints, 6);
    let t = trace(&x, &mid).unwrap();
    let down = trace(&t, &b).unwrap();
    assert!(down.coords()[0].agrees(&matrix_trace(&x)));
}

#[test]
fn unramified_trace_and_embedding() {
    let u1 = RingDescriptor::new(3, 3, RingKind::Unram(1), 6).unwrap();
    let u2 = RingDescriptor::new(3, 3, RingKind::Unram(2), 6).unwrap();
    let e = Embedding::new(&u1, &u2).unwrap();
    let w = ExtensionElement::unram_gen(&u1).unwrap();
    let img = e.apply(&w).unwrap();
    let poly: Vec<i64> = u1.unram_poly().iter().map(|&c| c as i64).collect();
    assert!(eval_int_poly(&poly, &img).is_zero());
    assert!(frobenius(&img).unwrap().agrees(&e.apply(&frobenius(&w).unwrap()).unwrap()));
    let x = w.add(&int(&u1, 2));
    assert!(trace(&e.apply(&x).unwrap(), &u1).unwrap().agrees(&x.scale_i64(3)));
    assert!(e.project(&ExtensionElement::unram_gen(&u2).unwrap()).is_err());
}

#[test]
fn gauss_sums() {
    let q = gauss_sum(3, 3, Character { level: 0, tame: 1, wild: 0 }, N).unwrap();
    assert!(q.primitive);
    let r = q.value.ring().clone();
    assert!(q.value.square().agrees(&int(&r, -3)));
    let t = gauss_sum(3, 3, Character::trivial(0), N).unwrap();
    assert!(!t.primitive);
    assert!(t.value.agrees(&int(&r, -1)));
    for chi in [Character { level: 1, tame: 0, wild: 1 }, Character { level: 1, tame: 1, wild: 2 }] {
        let a = gauss_sum(3, 3, chi, N).unwrap().value;
        let b = gauss_sum(3, 3, chi.inverse(3), N).unwrap().value;
        let r = a.ring().clone();
        assert!(a.mul(&b).agrees(&int(&r, chi.sign() * 9)));
    }
}

#[test]
fn composite_quad_cyc_inverse() {
    let r = RingDescriptor::with_factors(3, 3, true, 2, 0, N).unwrap();
    let a = ExtensionElement::alpha(&r).unwrap();
    let z = ExtensionElement::zeta(&r).unwrap();
    let x = a.add(&z);
    let y = x.inv().unwrap();
    assert!(x.mul(&y).agrees(&int(&r, 1)));
    let ai = a.inv().unwrap();
    assert!(ai.mul(&a).agrees(&int(&r, 1)));
}
