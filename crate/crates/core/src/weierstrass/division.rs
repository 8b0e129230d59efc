use crate::error::{Error, Result};
use crate::series::{Algebra, TruncSeries1, TruncSeries2};

/// Series along one variable, as needed by the division iteration.
pub trait DivisionSeries: Algebra + PartialEq {
    fn len(&self) -> usize;
    /// Division by `T^k`, dropping low terms and padding with zeros.
    fn shift_down(&self, k: usize) -> Self;
    /// The part of degree below `k`.
    fn low(&self, k: usize) -> Self;
    fn inverse(&self) -> Result<Self>;
}

impl DivisionSeries for TruncSeries1 {
    fn len(&self) -> usize {
        self.cap()
    }
    fn shift_down(&self, k: usize) -> Self {
        let mut out = self.zero_like();
        for i in k..self.cap() {
            out.set_coeff(i - k, self.coeff(i).clone());
        }
        out
    }
    fn low(&self, k: usize) -> Self {
        let mut out = self.zero_like();
        for i in 0..k.min(self.cap()) {
            out.set_coeff(i, self.coeff(i).clone());
        }
        out
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
}

/// A two-variable series read as a series in `Y` over `R[[X]]`.
#[derive(Clone, PartialEq, Debug)]
pub struct InY(pub TruncSeries2);

impl Algebra for InY {
    fn add(&self, o: &Self) -> Self {
        InY(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        InY(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        InY(self.0.mul(&o.0))
    }
    fn neg(&self) -> Self {
        InY(self.0.neg())
    }
    fn zero_like(&self) -> Self {
        InY(self.0.zero_like())
    }
    fn one_like(&self) -> Self {
        InY(self.0.one_like())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl DivisionSeries for InY {
    fn len(&self) -> usize {
        self.0.caps().1
    }
    fn shift_down(&self, k: usize) -> Self {
        let (mx, my) = self.0.caps();
        let mut out = self.0.zero_like();
        for i in 0..mx {
            for j in k..my {
                out.set(i, j - k, self.0.coeff(i, j).clone());
            }
        }
        InY(out)
    }
    fn low(&self, k: usize) -> Self {
        let (mx, my) = self.0.caps();
        let mut out = self.0.zero_like();
        for i in 0..mx {
            for j in 0..k.min(my) {
                out.set(i, j, self.0.coeff(i, j).clone());
            }
        }
        InY(out)
    }
    fn inverse(&self) -> Result<Self> {
        inverse2(&self.0).map(InY)
    }
}

/// Inverse of a two-variable series with invertible constant term, by
/// Newton iteration.
pub(crate) fn inverse2(g: &TruncSeries2) -> Result<TruncSeries2> {
    let (mx, my) = g.caps();
    let c = g.coeff(0, 0).inv()?;
    let mut z = TruncSeries2::zero(g.ring(), g.caps());
    z.set(0, 0, c);
    let two = TruncSeries2::one(g.ring(), g.caps()).add(&TruncSeries2::one(g.ring(), g.caps()));
    let reach = (mx + my) as i64 + g.ring().prec() + 2;
    let mut k = 1i64;
    while k < reach {
        z = z.mul(&two.sub(&g.mul(&z)));
        k *= 2;
    }
    if !g.mul(&z).sub(&g.one_like()).is_zero() {
        return Err(Error::NonConvergent);
    }
    Ok(z)
}

/// Division with remainder `h = q g + r`, `r` of degree below `lambda`,
/// for `g` whose coefficients below `lambda` lie in the maximal ideal and
/// whose coefficient at `lambda` is a unit.
///
/// Iterates `q <- (tau(h) - tau(q A)) / B` with `A` the low part of `g`,
/// `B = tau(g)` and `tau` the shift down by `lambda`, until two iterates
/// agree; `max_iter` bounds the iteration.
pub fn weierstrass_divide<S: DivisionSeries>(h: &S, g: &S, lambda: usize, max_iter: usize) -> Result<(S, S)> {
    let a = g.low(lambda);
    let beta = g.shift_down(lambda).inverse()?;
    let th = h.shift_down(lambda);
    let mut q = h.zero_like();
    let mut stable = false;
    for _ in 0..max_iter {
        let next = beta.mul(&th.sub(&q.mul(&a).shift_down(lambda)));
        if next == q {
            stable = true;
            break;
        }
        q = next;
    }
    if !stable {
        return Err(Error::NonConvergent);
    }
    let r = h.sub(&q.mul(g)).low(lambda);
    Ok((q, r))
}
