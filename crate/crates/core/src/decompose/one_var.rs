use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::logmatrix::{log_matrix, LogMatrixResult};
use crate::padic::{Embedding, ExtensionElement, PadicNumber, Ring, RingDescriptor, RingKind};
use crate::series::{Algebra, Mat2, TruncSeries1};

/// Where a pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Synthetic,
    Ingested,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Synthetic => "synthetic",
            Provenance::Ingested => "ingested",
        }
    }
}

/// Observed valuations of a decomposition output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegralityCertificate {
    /// Least coordinate valuation over all coefficients.
    pub min_valuation: i64,
    /// `max(0, -min_valuation)`; zero for integral data.
    pub max_denominator: i64,
    pub prec: i64,
}

impl IntegralityCertificate {
    pub fn of(series: &[&TruncSeries1]) -> Self {
        let prec = series.iter().map(|s| s.prec()).min().unwrap_or(i64::MAX);
        let min_valuation = series
            .iter()
            .flat_map(|s| s.coeffs())
            .filter(|c| !c.is_zero())
            .map(|c| c.coord_valuation())
            .min()
            .unwrap_or(prec);
        IntegralityCertificate { min_valuation, max_denominator: (-min_valuation).max(0), prec }
    }

    pub fn is_integral(&self) -> bool {
        self.max_denominator == 0
    }
}

/// A pair of Iwasawa functions over Z_p.
#[derive(Debug, Clone)]
pub struct LPair {
    pub sharp: TruncSeries1,
    pub flat: TruncSeries1,
    pub provenance: Provenance,
    pub certificate: IntegralityCertificate,
}

impl LPair {
    pub fn new(sharp: TruncSeries1, flat: TruncSeries1, provenance: Provenance) -> Result<Self> {
        if sharp.cap() != flat.cap() {
            return Err(Error::CapMismatch);
        }
        if sharp.ring().rank() != 1 || !sharp.ring().same_shape(flat.ring()) {
            return Err(Error::UnsupportedRing("pairs live over Z_p"));
        }
        let certificate = IntegralityCertificate::of(&[&sharp, &flat]);
        if !certificate.is_integral() {
            return Err(Error::NotDecomposable(format!(
                "coefficient of valuation {}",
                certificate.min_valuation
            )));
        }
        Ok(LPair { sharp, flat, provenance, certificate })
    }

    pub fn cap(&self) -> usize {
        self.sharp.cap()
    }

    pub fn ring(&self) -> &Ring {
        self.sharp.ring()
    }
}

impl PartialEq for LPair {
    fn eq(&self, o: &Self) -> bool {
        self.sharp == o.sharp && self.flat == o.flat
    }
}

/// Right division by the log matrix through its adjugate and the inverse
/// of its determinant.
#[derive(Clone, Debug)]
pub struct LogSolver {
    pub log: LogMatrixResult,
    adj: Mat2<TruncSeries1>,
    det_inv: TruncSeries1,
}

impl LogSolver {
    pub fn new(log: LogMatrixResult) -> Result<Self> {
        let adj = log.matrix.adjugate();
        let det_inv = det_inverse(&log)?;
        Ok(LogSolver { log, adj, det_inv })
    }

    pub fn ring(&self) -> &Ring {
        self.log.matrix.get(0, 0).ring()
    }

    pub fn cap(&self) -> usize {
        self.log.cap
    }

    /// `v Log`.
    pub fn apply(&self, v: &[TruncSeries1; 2]) -> [TruncSeries1; 2] {
        self.log.matrix.left_mul(v)
    }

    /// `v Log^-1`, with the precision the data supports.
    pub fn solve(&self, v: &[TruncSeries1; 2]) -> [TruncSeries1; 2] {
        let w = self.adj.left_mul(v);
        [w[0].mul(&self.det_inv), w[1].mul(&self.det_inv)]
    }
}

/// `1 / det Log` from the closed form
/// `det Log = (beta - alpha) p^-(d+2) ((1+X)^(p^d) - 1) / X` at depth `d`.
fn det_inverse(log: &LogMatrixResult) -> Result<TruncSeries1> {
    let quad = log.matrix.get(0, 0).ring();
    let (p, cap, d) = (quad.p(), log.cap, log.depth);
    let work = log.prec + 2 * cap as i64 + 8;
    let base = RingDescriptor::new(p, quad.ap(), RingKind::Base, work)?;
    let n = BigInt::from(p).pow(d);
    // (1+X)^n - 1 = sum_(j>=1) C(n, j) X^j; coefficient j of the quotient by p^d X
    let mut binom = n.clone();
    let mut coeffs = Vec::with_capacity(cap);
    for j in 0..cap {
        let c = PadicNumber::from_bigint(p, &binom, work + d as i64).shift(-(d as i64));
        coeffs.push(ExtensionElement::from_padic(&base, &c));
        binom = binom * (&n - BigInt::from(j + 1)) / BigInt::from(j + 2);
    }
    let inv = TruncSeries1::from_coeffs(&base, coeffs)?.inv()?;
    let wide = quad.at_prec(work)?;
    let alpha = ExtensionElement::alpha(&wide)?;
    let gap = ExtensionElement::beta(&wide)?.sub(&alpha);
    let factor = ExtensionElement::from_i64(&wide, (p * p) as i64).div(&gap)?;
    Ok(inv.embed(&Embedding::new(&base, &wide)?)?.scale(&factor))
}

/// Digits lost by a compose-then-decompose round trip at `cap`: a pair
/// known to `prec + input_margin` digits comes back to `prec` digits.
/// Measured on the all-ones pair.
pub fn input_margin(p: u32, ap: i64, cap: usize) -> Result<i64> {
    let probe = 2 * cap as i64 + 16;
    let base = RingDescriptor::new(p, ap, RingKind::Base, probe)?;
    let ones = TruncSeries1::from_i64s(&base, &alloc::vec![1; cap], cap);
    let pair = LPair::new(ones.clone(), ones, Provenance::Synthetic)?;
    let l = compose1(&pair, probe, cap)?;
    let data = l[0].prec().min(l[1].prec());
    let solver = LogSolver::new(log_matrix(p, ap, data, cap)?)?;
    let x = solver.solve(&[l[0].recast(solver.ring())?, l[1].recast(solver.ring())?]);
    let got = x[0].prec().min(x[1].prec());
    if got <= 0 {
        return Err(Error::PrecisionExhausted(format!("probe at {probe} digits kept none")));
    }
    Ok(probe - got)
}

fn to_quad(s: &TruncSeries1, quad: &Ring) -> Result<TruncSeries1> {
    s.embed(&Embedding::new(s.ring(), quad)?)
}

/// `(L_alpha, L_beta) = (L_sharp, L_flat) Log` with `Log` from `solver`.
pub fn compose1_with(pair: &LPair, solver: &LogSolver) -> Result<[TruncSeries1; 2]> {
    if pair.cap() != solver.cap() {
        return Err(Error::CapMismatch);
    }
    let quad = solver.ring().clone();
    let v = [to_quad(&pair.sharp, &quad)?, to_quad(&pair.flat, &quad)?];
    Ok(solver.apply(&v))
}

/// [`compose1_with`] for the log matrix to `(p^prec, X^cap)`.
pub fn compose1(pair: &LPair, prec: i64, cap: usize) -> Result<[TruncSeries1; 2]> {
    let ring = pair.ring();
    let solver = LogSolver::new(log_matrix(ring.p(), ring.ap(), prec, cap)?)?;
    compose1_with(pair, &solver)
}

/// The integral pair with `(L_sharp, L_flat) Log = (L_alpha, L_beta)`, to
/// absolute precision `prec`.
pub fn decompose1_with(l: &[TruncSeries1; 2], solver: &LogSolver, prec: i64) -> Result<LPair> {
    let quad = solver.ring();
    if !l[0].ring().same_shape(quad) || !l[1].ring().same_shape(quad) {
        return Err(Error::DescriptorMismatch);
    }
    if l[0].cap() != solver.cap() || l[1].cap() != solver.cap() {
        return Err(Error::CapMismatch);
    }
    let x = solver.solve(l);
    let got = x[0].prec().min(x[1].prec());
    if got < prec {
        return Err(Error::PrecisionExhausted(format!("pair determined to {got} of {prec} digits")));
    }
    let base = RingDescriptor::new(quad.p(), quad.ap(), RingKind::Base, prec)?;
    let down = Embedding::new(&base, &quad.at_prec(prec)?)?;
    let mut out = [TruncSeries1::zero(&base, solver.cap()), TruncSeries1::zero(&base, solver.cap())];
    for (o, s) in out.iter_mut().zip(&x) {
        let s = s.with_prec(prec).recast(&quad.at_prec(prec)?)?;
        for (k, c) in s.coeffs().iter().enumerate() {
            if c.coord_valuation() < 0 && !c.is_zero() {
                return Err(Error::NotDecomposable(format!("coefficient {k} has valuation {}", c.coord_valuation())));
            }
            let c = down.project(c).map_err(|_| Error::NotDecomposable(format!("coefficient {k} is not in Z_p")))?;
            o.set_coeff(k, c);
        }
    }
    let [sharp, flat] = out;
    LPair::new(sharp, flat, Provenance::Ingested)
}

/// [`decompose1_with`] using a log matrix at the precision of the data.
pub fn decompose1(l: &[TruncSeries1; 2], prec: i64, cap: usize) -> Result<LPair> {
    let ring = l[0].ring();
    let data = l[0].prec().min(l[1].prec()).min(ring.prec());
    let solver = LogSolver::new(log_matrix(ring.p(), ring.ap(), data, cap)?)?;
    let l = [l[0].recast(solver.ring())?, l[1].recast(solver.ring())?];
    decompose1_with(&l, &solver, prec)
}
