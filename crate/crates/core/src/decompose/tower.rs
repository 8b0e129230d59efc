use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::logmatrix::{h_matrices_at_level, kernel_membership, Membership};
use crate::padic::{Embedding, ExtensionElement, Ring, RingDescriptor, RingKind};
use crate::series::{reduce_to_level, Algebra, GroupRingElement, Mat2, TruncSeries1};

/// A root of `Y^2 - a_p Y + p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Root {
    Alpha,
    Beta,
}

impl Root {
    pub fn name(self) -> &'static str {
        match self {
            Root::Alpha => "alpha",
            Root::Beta => "beta",
        }
    }

    pub fn element(self, quad: &Ring) -> Result<ExtensionElement> {
        match self {
            Root::Alpha => ExtensionElement::alpha(quad),
            Root::Beta => ExtensionElement::beta(quad),
        }
    }
}

/// `L^(n) = xi^-(n+2) (xi theta_n - nu(theta_(n-1)))` for `n >= 1`.
#[derive(Clone, Debug)]
pub struct StabilizedTower {
    pub xi: Root,
    pub theta: Vec<GroupRingElement>,
    /// `levels[n - 1]` is `L^(n)`.
    pub levels: Vec<GroupRingElement>,
}

impl StabilizedTower {
    pub fn level(&self, n: u32) -> &GroupRingElement {
        &self.levels[n as usize - 1]
    }

    pub fn top(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Whether `pi(L^(n+1)) = L^(n)` at precision.
    pub fn compatible_at(&self, n: u32) -> Result<bool> {
        Ok(self.level(n + 1).project_pi()? == *self.level(n))
    }

    /// [`compatible_at`](Self::compatible_at) for every `1 <= n < top`.
    pub fn compatibility(&self) -> Result<Vec<(u32, bool)>> {
        (1..self.top()).map(|n| self.compatible_at(n).map(|ok| (n, ok))).collect()
    }
}

fn check_tower(theta: &[GroupRingElement]) -> Result<Ring> {
    let ring = theta.first().ok_or_else(|| Error::InvalidParameters("empty tower".into()))?.ring().clone();
    if ring.rank() != 1 {
        return Err(Error::UnsupportedRing("towers live over Z_p"));
    }
    for (n, t) in theta.iter().enumerate() {
        if t.level() != n as u32 {
            return Err(Error::InvalidParameters(format!("entry {n} is at level {}", t.level())));
        }
        if !t.ring().same_shape(&ring) {
            return Err(Error::DescriptorMismatch);
        }
    }
    Ok(ring)
}

/// `pi(theta_(n+1)) - a_p theta_n + nu(theta_(n-1))` for `1 <= n < n_max`.
pub fn three_term_defects(theta: &[GroupRingElement]) -> Result<Vec<GroupRingElement>> {
    let ring = check_tower(theta)?;
    let ap = ring.ap();
    (1..theta.len().saturating_sub(1))
        .map(|n| Ok(theta[n + 1].project_pi()?.sub(&theta[n].scale_i64(ap)).add(&theta[n - 1].lift_nu())))
        .collect()
}

fn to_quad(g: &GroupRingElement, quad: &Ring) -> Result<GroupRingElement> {
    let e = Embedding::new(g.ring(), quad)?;
    g.map_ring(quad, |c| e.apply(c))
}

/// Stabilizes `theta_0, ..., theta_(n_max)` at the root `xi`.
pub fn stabilize(theta: &[GroupRingElement], xi: Root) -> Result<StabilizedTower> {
    let ring = check_tower(theta)?;
    let quad = RingDescriptor::new(ring.p(), ring.ap(), RingKind::Quad, ring.prec())?;
    let x = xi.element(&quad)?;
    let x_inv = x.inv()?;
    let mut levels = Vec::with_capacity(theta.len().saturating_sub(1));
    for n in 1..theta.len() {
        let top = to_quad(&theta[n], &quad)?.scale(&x);
        let below = to_quad(&theta[n - 1].lift_nu(), &quad)?;
        levels.push(top.sub(&below).scale(&x_inv.pow(n as u64 + 2)));
    }
    Ok(StabilizedTower { xi, theta: theta.to_vec(), levels })
}

fn at_level(s: &TruncSeries1, n: u32) -> Result<GroupRingElement> {
    Ok(reduce_to_level(s, n)?.element)
}

/// `Phi_(p^k)(1+X)` in the group ring of level `n`.
fn cyclotomic_at_level(ring: &Ring, k: u32, n: u32) -> GroupRingElement {
    let p = ring.p() as usize;
    let step = p.pow(k - 1);
    (0..p).fold(GroupRingElement::zero(ring, n), |acc, i| acc.add(&GroupRingElement::group_element(ring, n, i * step)))
}

/// `(s, f) C_1 ... C_(n-1)` in the group ring of level `n`.
fn partial_product(pair: &[GroupRingElement; 2], n: u32) -> [GroupRingElement; 2] {
    let ring = pair[0].ring().clone();
    let ap = ring.ap();
    let mut v = pair.clone();
    for k in 1..n {
        let phi = cyclotomic_at_level(&ring, k, n);
        // (a, b) [[a_p, 1], [-Phi, 0]] = (a_p a - Phi b, a)
        v = [v[0].scale_i64(ap).sub(&phi.mul(&v[1])), v[0].clone()];
    }
    v
}

/// The tower `theta_0, ..., theta_(n_max)` attached to a pair of
/// polynomials: `theta_n = -[(s, f) C_1 ... C_(n-1)]_1` at level `n` and
/// `theta_0 = -f(0)`. It satisfies the three-term relation.
pub fn tower_from_pair(sharp: &TruncSeries1, flat: &TruncSeries1, n_max: u32) -> Result<Vec<GroupRingElement>> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(at_level(flat, 0)?.scale_i64(-1));
    for n in 1..=n_max {
        let pair = [at_level(sharp, n)?, at_level(flat, n)?];
        out.push(partial_product(&pair, n)[0].scale_i64(-1));
    }
    Ok(out)
}

/// A level-`n` pair solving the finite decomposition, determined modulo
/// the left kernel of `H_n`.
#[derive(Clone, Debug)]
pub struct FiniteDecomposition {
    pub level: u32,
    pub pair: [GroupRingElement; 2],
    pub determined_prec: i64,
    /// Character levels at which the pair is only determined up to a line.
    pub undetermined_levels: Vec<u32>,
    /// Rows spanning that freedom, `H_n^perp`.
    pub kernel: Mat2<GroupRingElement>,
    h: Mat2<GroupRingElement>,
}

impl FiniteDecomposition {
    /// `v H_n`.
    pub fn image(&self, v: &[GroupRingElement; 2]) -> [GroupRingElement; 2] {
        self.h.left_mul(v)
    }

    /// Whether `other` agrees with the pair on the determined part, that is
    /// `(pair - other) H_n = 0` at precision.
    pub fn agrees_on_determined(&self, other: &[GroupRingElement; 2]) -> bool {
        let d = [self.pair[0].sub(&other[0]), self.pair[1].sub(&other[1])];
        let w = self.image(&d);
        w[0].is_zero() && w[1].is_zero()
    }
}

/// Solves `(s, f) H_n = (theta_n, nu(theta_(n-1)))` over the group ring of
/// level `n`, the finite form of `(L_alpha, L_beta) = (s, f) M_n` with the
/// stabilized tower.
pub fn decompose_finite(
    theta_n: &GroupRingElement,
    theta_nm1: &GroupRingElement,
    n: u32,
    prec: i64,
) -> Result<FiniteDecomposition> {
    if n == 0 {
        return Err(Error::LevelZero);
    }
    if theta_n.level() != n || theta_nm1.level() + 1 != n {
        return Err(Error::InvalidParameters(format!("levels {} and {} do not match {n}", theta_n.level(), theta_nm1.level())));
    }
    let ring = theta_n.ring().at_prec(prec.min(theta_n.ring().prec()))?;
    let recast = |g: &GroupRingElement| g.map_ring(&ring, |c| c.with_prec(ring.prec()).recast(&ring));
    let v = [recast(theta_n)?, recast(&theta_nm1.lift_nu())?];
    let (h, kernel) = h_matrices_at_level(&ring, n)?;
    match kernel_membership(&v, n)? {
        Membership::InRowSpan { witness, determined_prec } => Ok(FiniteDecomposition {
            level: n,
            pair: witness,
            determined_prec,
            undetermined_levels: (1..=n).collect(),
            kernel,
            h,
        }),
        Membership::NotInRowSpan { .. } => Err(Error::NotDecomposable(format!("data is not in the row span of H_{n}"))),
        Membership::Undetermined => Err(Error::PrecisionExhausted(format!("no solution modulo p^{}", ring.prec()))),
    }
}

/// The level-`n` reduction of a pair of polynomials.
pub fn pair_at_level(sharp: &TruncSeries1, flat: &TruncSeries1, n: u32) -> Result<[GroupRingElement; 2]> {
    Ok([at_level(sharp, n)?, at_level(flat, n)?])
}
