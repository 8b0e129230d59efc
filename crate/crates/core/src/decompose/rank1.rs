use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::padic::{ExtensionElement, PadicNumber, Ring};
use crate::series::{Algebra, Mat2, TruncSeries1};
use crate::weierstrass::{prep1, weierstrass_divide};

/// A factorization `M = col^T row` with `col` primitive and its first
/// nonzero entry of the form `p^mu * distinguished`.
#[derive(Clone, Debug)]
pub struct Rank1Factorization {
    pub col: [TruncSeries1; 2],
    pub row: [TruncSeries1; 2],
    /// Index of the normalized entry of `col`.
    pub lead: usize,
    pub mu: i64,
    /// Monic, increasing degree.
    pub distinguished: Vec<ExtensionElement>,
}

impl Rank1Factorization {
    pub fn cap(&self) -> usize {
        self.col[0].cap()
    }

    pub fn outer(&self) -> Mat2<TruncSeries1> {
        let [c0, c1] = &self.col;
        let [r0, r1] = &self.row;
        Mat2::new(c0.mul(r0), c0.mul(r1), c1.mul(r0), c1.mul(r1))
    }
}

#[derive(Clone, Debug)]
pub enum Rank1Outcome {
    Factored(Rank1Factorization),
    /// A nonvanishing 2x2 minor.
    NotRankOne { det: TruncSeries1 },
    /// The zero matrix.
    Degenerate,
}

/// Polynomials over Q_p as coefficient vectors, increasing degree.
type Poly = Vec<PadicNumber>;

fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn monic(a: &Poly) -> Result<Poly> {
    let lead = a.last().ok_or(Error::ZeroAtPrecision)?.inv()?;
    Ok(a.iter().map(|c| c.mul(&lead)).collect())
}

fn rem(a: &Poly, b: &Poly) -> Result<Poly> {
    let b = monic(b)?;
    let mut a = a.clone();
    while a.len() >= b.len() {
        let q = a.last().expect("nonempty").clone();
        let off = a.len() - b.len();
        for (k, c) in b.iter().enumerate() {
            a[off + k] = a[off + k].sub(&q.mul(c));
        }
        a.pop();
        a = trim(a);
    }
    Ok(a)
}

/// Monic gcd over Q_p by the Euclidean algorithm.
fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b)?;
        a = b;
        b = r;
    }
    monic(&a)
}

fn coords(d: &[ExtensionElement]) -> Poly {
    d.iter().map(|c| c.coords()[0].clone()).collect()
}

fn series_of(ring: &Ring, poly: &Poly, cap: usize) -> Result<TruncSeries1> {
    let coeffs = poly.iter().map(|c| ExtensionElement::from_padic(ring, c)).collect();
    Ok(TruncSeries1::from_coeffs(ring, coeffs)?.with_cap(cap))
}

/// `h / (p^mu g)` for `g` distinguished of degree `lambda` times a unit,
/// requiring a zero remainder. The top `lambda` terms are dropped.
fn exact_divide(h: &TruncSeries1, g: &TruncSeries1, mu: i64, lambda: usize) -> Result<TruncSeries1> {
    let cap = h.cap();
    let h = h.map(|c| c.shift(-mu));
    if h.coeffs().iter().any(|c| !c.is_zero() && c.coord_valuation() < 0) {
        return Err(Error::NotDecomposable(format!("not divisible by p^{mu}")));
    }
    let (q, r) = weierstrass_divide(&h, g, lambda, (h.ring().prec() + 4).max(8) as usize)?;
    if !r.is_zero() {
        return Err(Error::NotDecomposable("nonzero remainder".into()));
    }
    Ok(q.with_cap(cap - lambda))
}

/// Factors a rank-one matrix of series over Z_p as `col^T row`. The column
/// is made primitive and its first nonzero entry `p^mu * unit *
/// distinguished` is divided by its unit.
pub fn rank1_factor(m: &Mat2<TruncSeries1>) -> Result<Rank1Outcome> {
    let ring = m.get(0, 0).ring().clone();
    if ring.rank() != 1 {
        return Err(Error::UnsupportedRing("factorization runs over Z_p"));
    }
    let cap = m.get(0, 0).cap();
    if m.entries().iter().any(|e| e.cap() != cap) {
        return Err(Error::CapMismatch);
    }
    if m.is_zero() {
        return Ok(Rank1Outcome::Degenerate);
    }
    let det = m.det();
    if !det.is_zero() {
        return Ok(Rank1Outcome::NotRankOne { det });
    }
    let j = if m.get(0, 0).is_zero() && m.get(1, 0).is_zero() { 1 } else { 0 };
    let v = [m.get(0, j).clone(), m.get(1, j).clone()];
    // col = v / gcd(v_0, v_1)
    let col = if v[0].is_zero() || v[1].is_zero() {
        let k = if v[0].is_zero() { 1 } else { 0 };
        let mut col = [TruncSeries1::zero(&ring, cap), TruncSeries1::zero(&ring, cap)];
        col[k] = TruncSeries1::one(&ring, cap);
        col
    } else {
        let (f0, f1) = (prep1(&v[0])?, prep1(&v[1])?);
        let mu = f0.mu.min(f1.mu);
        let g = poly_gcd(&coords(&f0.distinguished), &coords(&f1.distinguished))?;
        if g.iter().any(|c| c.valuation().is_some_and(|v| v < 0)) {
            return Err(Error::PrecisionExhausted("common factor is not integral at precision".into()));
        }
        let lambda = g.len() - 1;
        let gs = series_of(&ring, &g, cap)?;
        [exact_divide(&v[0], &gs, mu, lambda)?, exact_divide(&v[1], &gs, mu, lambda)?]
    };
    let lead = if col[0].is_zero() { 1 } else { 0 };
    let prep = prep1(&col[lead])?;
    let unit_inv = prep.unit.with_cap(col[lead].cap()).inv()?;
    let col = [col[0].mul(&unit_inv), col[1].mul(&unit_inv)];
    let lambda = prep.lambda;
    let dist = series_of(&ring, &coords(&prep.distinguished), cap)?;
    let row = [
        exact_divide(m.get(lead, 0), &dist, prep.mu, lambda)?,
        exact_divide(m.get(lead, 1), &dist, prep.mu, lambda)?,
    ];
    let out_cap = row[0].cap().min(col[0].cap());
    let f = Rank1Factorization {
        col: [col[0].with_cap(out_cap), col[1].with_cap(out_cap)],
        row: [row[0].with_cap(out_cap), row[1].with_cap(out_cap)],
        lead,
        mu: prep.mu,
        distinguished: prep.distinguished,
    };
    let back = f.outer();
    for (a, b) in back.entries().iter().zip(m.entries()) {
        if !a.sub(&b.with_cap(out_cap)).is_zero() {
            return Err(Error::PrecisionExhausted("outer product does not reproduce the input".into()));
        }
    }
    Ok(Rank1Outcome::Factored(f))
}

/// The normalized form of a primitive column: divided by the unit of the
/// preparation of its first nonzero entry.
pub fn normalize_column(col: &[TruncSeries1; 2]) -> Result<[TruncSeries1; 2]> {
    let lead = if col[0].is_zero() { 1 } else { 0 };
    let prep = prep1(&col[lead])?;
    let unit_inv = prep.unit.inv()?;
    Ok([col[0].mul(&unit_inv), col[1].mul(&unit_inv)])
}
