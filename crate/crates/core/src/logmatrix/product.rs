use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::padic::{ExtensionElement, Ring, RingDescriptor, RingKind, Valuation};
use crate::series::{cyclotomic_ints, cyclotomic_poly, Algebra, Mat2, TailFloor, TruncSeries1};

/// `[[a_p, 1], [-Phi_(p^n)(1+X), 0]]`.
pub fn c_matrix(ring: &Ring, n: u32, cap: usize) -> Result<Mat2<TruncSeries1>> {
    if n == 0 {
        return Err(Error::InvalidParameters("C_n needs n >= 1".into()));
    }
    let ap = TruncSeries1::constant(&ExtensionElement::from_i64(ring, ring.ap()), cap);
    let one = TruncSeries1::one(ring, cap);
    let phi = cyclotomic_poly(ring, n, cap);
    Ok(Mat2::new(ap, one, phi.neg(), TruncSeries1::zero(ring, cap)))
}

/// `M P` for `M = C_k`, using the shape of `C_k`.
fn times_c(m: &Mat2<TruncSeries1>, ap: &ExtensionElement, phi: &TruncSeries1) -> Mat2<TruncSeries1> {
    let row = |a: &TruncSeries1, b: &TruncSeries1| (a.scale(ap).sub(&b.mul(phi)), a.clone());
    let (a, b) = row(m.get(0, 0), m.get(0, 1));
    let (c, d) = row(m.get(1, 0), m.get(1, 1));
    Mat2::new(a, b, c, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationCertificate {
    pub depth: u32,
    pub criterion: &'static str,
    /// Lower bound for the valuation of every omitted factor's
    /// contribution, at least the target precision.
    pub tail_valuation: Valuation,
    /// Exact least valuation of `Phi_(p^(depth+1))(1+X) - p` below the cap.
    pub first_omitted: i64,
}

#[derive(Clone, Debug)]
pub struct LogMatrixResult {
    pub matrix: Mat2<TruncSeries1>,
    pub depth: u32,
    pub working_prec: i64,
    pub prec: i64,
    pub cap: usize,
    pub certificate: StabilizationCertificate,
    /// Every coefficient below the cap has valuation at least this.
    pub valuation_floor: Valuation,
}

impl LogMatrixResult {
    /// Valuation floor for all coefficients, including those beyond the cap.
    pub fn tail_floor() -> TailFloor {
        TailFloor::LogGrowth { slope: Valuation::new(1, 2), offset: Valuation::new(3, 2) }
    }
}

fn log_floor(p: u32, cap: usize) -> i64 {
    let (mut k, mut x) = (0i64, p as usize);
    while x < cap {
        k += 1;
        x *= p as usize;
    }
    k
}

/// Least depth after which every further factor changes the product by
/// valuation at least `prec` below `X^cap`.
pub fn min_depth(p: u32, prec: i64, cap: usize) -> u32 {
    (2 * (prec + log_floor(p, cap)) + 1).max(1) as u32
}

fn check_params(prec: i64, cap: usize) -> Result<()> {
    if prec < 1 || cap < 1 {
        return Err(Error::InvalidParameters(format!("need N, M >= 1, got {prec}, {cap}")));
    }
    Ok(())
}

/// The stabilized product, to precision `(p^prec, X^cap)`.
pub fn log_matrix(p: u32, ap: i64, prec: i64, cap: usize) -> Result<LogMatrixResult> {
    check_params(prec, cap)?;
    let depth = min_depth(p, prec, cap);
    let working = prec + (depth as i64 + 3) / 2 + 1;
    log_matrix_with(p, ap, prec, cap, depth, working)
}

/// `(C_1 ... C_depth) A'^-(depth+2) [[-1,-1],[beta,alpha]]` computed with
/// integer precision `working`.
pub fn log_matrix_with(p: u32, ap: i64, prec: i64, cap: usize, depth: u32, working: i64) -> Result<LogMatrixResult> {
    check_params(prec, cap)?;
    let k = depth as i64 + 2;
    if working < prec + (k + 1) / 2 {
        return Err(Error::PrecisionExhausted(format!(
            "working precision {working} below {} for depth {depth}",
            prec + (k + 1) / 2
        )));
    }
    let base = RingDescriptor::new(p, ap, RingKind::Base, working)?;
    let ap_el = ExtensionElement::from_i64(&base, ap);
    let mut prod = Mat2::identity_like(&TruncSeries1::zero(&base, cap));
    for n in 1..=depth {
        prod = times_c(&prod, &ap_el, &cyclotomic_poly(&base, n, cap));
    }
    let quad = RingDescriptor::new(p, ap, RingKind::Quad, working + k)?;
    let prod = prod.map(|s| lift(s, &quad));
    let alpha = ExtensionElement::alpha(&quad)?;
    let beta = ExtensionElement::beta(&quad)?;
    let q = Mat2::new(
        ExtensionElement::from_i64(&quad, -1),
        ExtensionElement::from_i64(&quad, -1),
        beta.clone(),
        alpha.clone(),
    );
    // A'^-k Q = Q diag(alpha^-k, beta^-k) = Q diag(beta^k, alpha^k) / p^k
    let d = Mat2::new(beta.pow(k as u64), ExtensionElement::zero(&quad), ExtensionElement::zero(&quad), alpha.pow(k as u64));
    let tail = q.mul(&d).map(|c| c.shift(-k));
    let tail = tail.map(|c| TruncSeries1::constant(c, cap));
    let out_ring = quad.at_prec(prec)?;
    let matrix = prod.mul(&tail).try_map(|s| s.with_prec(prec).recast(&out_ring))?;
    let first = first_omitted(p, depth + 1, cap);
    let certificate = StabilizationCertificate {
        depth,
        criterion: "binomial-valuation",
        tail_valuation: Valuation::from_integer(depth as i64 + 1 - log_floor(p, cap)) - Valuation::new(depth as i64 + 3, 2),
        first_omitted: first,
    };
    Ok(LogMatrixResult {
        matrix,
        depth,
        working_prec: working,
        prec,
        cap,
        certificate,
        valuation_floor: -Valuation::new(log_floor(p, cap) + 3, 2),
    })
}

fn lift(s: &TruncSeries1, ring: &Ring) -> TruncSeries1 {
    let coeffs: Vec<ExtensionElement> = s.coeffs().iter().map(|c| ExtensionElement::from_padic(ring, &c.coords()[0])).collect();
    TruncSeries1::from_coeffs(ring, coeffs).expect("lifted coefficients")
}

fn first_omitted(p: u32, n: u32, cap: usize) -> i64 {
    let pb = BigInt::from(p);
    let mut ints = cyclotomic_ints(p, n, cap);
    ints[0] -= &pb;
    ints.iter()
        .filter(|c| !c.is_zero())
        .map(|c| {
            let (mut c, mut v) = (c.clone(), 0);
            while c.is_multiple_of(&pb) {
                c /= &pb;
                v += 1;
            }
            v
        })
        .min()
        .unwrap_or(i64::MAX)
}

/// The finite product at `X = zeta_(p^n) - 1`, where every later factor
/// equals `A'`.
pub fn log_matrix_at_root(p: u32, ap: i64, n: u32, prec: i64) -> Result<Mat2<ExtensionElement>> {
    root_product(p, ap, n, n, prec)
}

/// `C_1(x) ... C_depth(x) A'^-(depth+2) [[-1,-1],[beta,alpha]]` at
/// `x = zeta_(p^level) - 1`.
pub fn root_product(p: u32, ap: i64, level: u32, depth: u32, prec: i64) -> Result<Mat2<ExtensionElement>> {
    if level == 0 {
        return Err(Error::InvalidParameters("root level starts at 1".into()));
    }
    let k = depth as i64 + 2;
    let ring = RingDescriptor::with_factors(p, ap, true, level, 0, prec + k + 2)?;
    let one = ExtensionElement::one(&ring);
    let zero = ExtensionElement::zero(&ring);
    let ap_el = ExtensionElement::from_i64(&ring, ap);
    let mut prod = Mat2::identity_like(&one);
    for m in 1..=depth {
        // Phi_(p^m)(zeta) = sum_(i<p) zeta^(i p^(m-1))
        let step = (p as i64).pow(m - 1);
        let mut phi = zero.clone();
        for i in 0..p as i64 {
            phi = phi.add(&ExtensionElement::zeta_pow(&ring, i * step)?);
        }
        prod = prod.mul(&Mat2::new(ap_el.clone(), one.clone(), phi.neg(), zero.clone()));
    }
    let alpha = ExtensionElement::alpha(&ring)?;
    let beta = ExtensionElement::beta(&ring)?;
    let q = Mat2::new(ExtensionElement::from_i64(&ring, -1), ExtensionElement::from_i64(&ring, -1), beta.clone(), alpha.clone());
    let d = Mat2::new(beta.pow(k as u64), zero.clone(), zero.clone(), alpha.pow(k as u64));
    let out = ring.at_prec(prec)?;
    prod.mul(&q).mul(&d).try_map(|c| c.shift(-k).with_prec(prec).recast(&out))
}
