use alloc::format;
use alloc::vec::Vec;

use super::one_var::{IntegralityCertificate, LogSolver};
use crate::error::{Error, Result};
use crate::logmatrix::log_matrix;
use crate::padic::{Embedding, Ring, RingDescriptor, RingKind};
use crate::series::{Mat2, TruncSeries1, TruncSeries2};

/// A 2x2 matrix of two-variable series.
pub type FourMatrix = Mat2<TruncSeries2>;

/// An integral four-fold decomposition with its certificate.
#[derive(Clone, Debug)]
pub struct FourDecomposition {
    pub matrix: FourMatrix,
    pub certificate: IntegralityCertificate,
}

fn check_four(m: &FourMatrix) -> Result<(Ring, (usize, usize))> {
    let ring = m.get(0, 0).ring().clone();
    let caps = m.get(0, 0).caps();
    for e in m.entries() {
        if e.caps() != caps {
            return Err(Error::CapMismatch);
        }
        if !e.ring().same_shape(&ring) {
            return Err(Error::DescriptorMismatch);
        }
    }
    Ok((ring, caps))
}

fn solvers_match(m: &FourMatrix, sx: &LogSolver, sy: &LogSolver) -> Result<(usize, usize)> {
    let (_, caps) = check_four(m)?;
    if caps != (sx.cap(), sy.cap()) {
        return Err(Error::CapMismatch);
    }
    if !sx.ring().same_shape(sy.ring()) {
        return Err(Error::DescriptorMismatch);
    }
    Ok(caps)
}

/// Applies `op` to the row pair `(row_0, row_1)` of each `Y^j` slice.
fn by_y_slices(
    a: &TruncSeries2,
    b: &TruncSeries2,
    ring: &Ring,
    op: impl Fn(&[TruncSeries1; 2]) -> Result<[TruncSeries1; 2]>,
) -> Result<[TruncSeries2; 2]> {
    let (u, v): (Vec<_>, Vec<_>) = (0..a.caps().1)
        .map(|j| op(&[a.y_coeff(j), b.y_coeff(j)]).map(|[u, v]| (u, v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok([TruncSeries2::from_y_coeffs(ring, &u)?, TruncSeries2::from_y_coeffs(ring, &v)?])
}

/// Applies `op` to the pair of each `X^i` slice.
fn by_x_slices(
    a: &TruncSeries2,
    b: &TruncSeries2,
    ring: &Ring,
    op: impl Fn(&[TruncSeries1; 2]) -> Result<[TruncSeries1; 2]>,
) -> Result<[TruncSeries2; 2]> {
    let (u, v): (Vec<_>, Vec<_>) = (0..a.caps().0)
        .map(|i| op(&[a.x_coeff(i), b.x_coeff(i)]).map(|[u, v]| (u, v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok([TruncSeries2::from_x_coeffs(ring, &u)?, TruncSeries2::from_x_coeffs(ring, &v)?])
}

/// `Log(Y)^T M Log(X)` over the quadratic ring of the solvers.
pub fn compose2_with(m: &FourMatrix, sx: &LogSolver, sy: &LogSolver) -> Result<FourMatrix> {
    solvers_match(m, sx, sy)?;
    let quad = sx.ring().clone();
    let up = Embedding::new(m.get(0, 0).ring(), &quad)?;
    let m = m.try_map(|e| {
        let c = e.coeffs().iter().map(|c| up.apply(c)).collect::<Result<Vec<_>>>()?;
        TruncSeries2::from_coeffs(&quad, e.caps(), c)
    })?;
    // rows of M Log(X)
    let r0 = by_y_slices(m.get(0, 0), m.get(0, 1), &quad, |v| Ok(sx.apply(v)))?;
    let r1 = by_y_slices(m.get(1, 0), m.get(1, 1), &quad, |v| Ok(sx.apply(v)))?;
    // columns of Log(Y)^T R: (R_0b, R_1b) Log(Y)
    let c0 = by_x_slices(&r0[0], &r1[0], &quad, |v| Ok(sy.apply(v)))?;
    let c1 = by_x_slices(&r0[1], &r1[1], &quad, |v| Ok(sy.apply(v)))?;
    let [a00, a10] = c0;
    let [a01, a11] = c1;
    Ok(Mat2::new(a00, a01, a10, a11))
}

fn solvers(p: u32, ap: i64, prec: i64, caps: (usize, usize)) -> Result<(LogSolver, LogSolver)> {
    let sx = LogSolver::new(log_matrix(p, ap, prec, caps.0)?)?;
    let sy = if caps.1 == caps.0 { sx.clone() } else { LogSolver::new(log_matrix(p, ap, prec, caps.1)?)? };
    Ok((sx, sy))
}

/// [`compose2_with`] with log matrices to `(p^prec, X^caps.0, Y^caps.1)`.
pub fn compose2(m: &FourMatrix, prec: i64, caps: (usize, usize)) -> Result<FourMatrix> {
    let ring = m.get(0, 0).ring();
    let (sx, sy) = solvers(ring.p(), ring.ap(), prec, caps)?;
    compose2_with(m, &sx, &sy)
}

/// Columns of `Log(Y)^-T input Log(X)^-1`.
fn solve2(input: &FourMatrix, sx: &LogSolver, sy: &LogSolver) -> Result<([TruncSeries2; 2], [TruncSeries2; 2])> {
    let quad = sx.ring();
    let s0 = by_y_slices(input.get(0, 0), input.get(0, 1), quad, |v| Ok(sx.solve(v)))?;
    let s1 = by_y_slices(input.get(1, 0), input.get(1, 1), quad, |v| Ok(sx.solve(v)))?;
    let m0 = by_x_slices(&s0[0], &s1[0], quad, |v| Ok(sy.solve(v)))?;
    let m1 = by_x_slices(&s0[1], &s1[1], quad, |v| Ok(sy.solve(v)))?;
    Ok((m0, m1))
}

/// The integral `M` with `Log(Y)^T M Log(X) = input`, by one solve in `X`
/// per row followed by one solve in `Y` per column.
pub fn decompose2_with(input: &FourMatrix, sx: &LogSolver, sy: &LogSolver, prec: i64) -> Result<FourDecomposition> {
    let caps = solvers_match(input, sx, sy)?;
    let quad = sx.ring().clone();
    if !input.get(0, 0).ring().same_shape(&quad) {
        return Err(Error::DescriptorMismatch);
    }
    let ([m00, m10], [m01, m11]) = solve2(input, sx, sy)?;
    let got = [&m00, &m01, &m10, &m11].iter().map(|e| e.prec()).min().unwrap_or(i64::MAX);
    if got < prec {
        return Err(Error::PrecisionExhausted(format!("matrix determined to {got} of {prec} digits")));
    }
    let target = quad.at_prec(prec)?;
    let base = RingDescriptor::new(quad.p(), quad.ap(), RingKind::Base, prec)?;
    let down = Embedding::new(&base, &target)?;
    let mut min_valuation = prec;
    let mut project = |e: &TruncSeries2| -> Result<TruncSeries2> {
        let e = e.map(|c| c.with_prec(prec)).recast(&target)?;
        let mut out = TruncSeries2::zero(&base, caps);
        for i in 0..caps.0 {
            for j in 0..caps.1 {
                let c = e.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let v = c.coord_valuation();
                min_valuation = min_valuation.min(v);
                if v < 0 {
                    return Err(Error::NotDecomposable(format!("coefficient X^{i} Y^{j} has valuation {v}")));
                }
                let c = down.project(c).map_err(|_| Error::NotDecomposable(format!("coefficient X^{i} Y^{j} is not in Z_p")))?;
                out.set(i, j, c);
            }
        }
        Ok(out)
    };
    let matrix = Mat2::new(project(&m00)?, project(&m01)?, project(&m10)?, project(&m11)?);
    let certificate = IntegralityCertificate { min_valuation, max_denominator: (-min_valuation).max(0), prec };
    Ok(FourDecomposition { matrix, certificate })
}

/// [`decompose2_with`] using log matrices at the precision of the data.
pub fn decompose2(input: &FourMatrix, prec: i64, caps: (usize, usize)) -> Result<FourDecomposition> {
    let (ring, _) = check_four(input)?;
    let data = input.entries().iter().map(|e| e.prec()).min().unwrap_or(i64::MAX).min(ring.prec());
    let (sx, sy) = solvers(ring.p(), ring.ap(), data, caps)?;
    let input = input.try_map(|e| e.recast(sx.ring()))?;
    decompose2_with(&input, &sx, &sy, prec)
}

/// Digits lost by a two-variable round trip at `caps`, measured on the
/// all-ones matrix.
pub fn input_margin2(p: u32, ap: i64, caps: (usize, usize)) -> Result<i64> {
    let probe = 4 * caps.0.max(caps.1) as i64 + 32;
    let base = RingDescriptor::new(p, ap, RingKind::Base, probe)?;
    let mut ones = TruncSeries2::zero(&base, caps);
    for i in 0..caps.0 {
        for j in 0..caps.1 {
            ones.set(i, j, crate::padic::ExtensionElement::one(&base));
        }
    }
    let m = Mat2::new(ones.clone(), ones.clone(), ones.clone(), ones);
    let l = compose2(&m, probe, caps)?;
    let data = l.entries().iter().map(|e| e.prec()).min().unwrap_or(probe);
    let (sx, sy) = solvers(p, ap, data, caps)?;
    let l = l.try_map(|e| e.recast(sx.ring()))?;
    let (c0, c1) = solve2(&l, &sx, &sy)?;
    let got = c0.iter().chain(&c1).map(|e| e.prec()).min().unwrap_or(i64::MAX);
    if got <= 0 {
        return Err(Error::PrecisionExhausted(format!("probe at {probe} digits kept none")));
    }
    Ok(probe - got)
}

/// `f(X, X)`.
pub fn restrict_diag(f: &TruncSeries2) -> TruncSeries1 {
    f.diagonal()
}
