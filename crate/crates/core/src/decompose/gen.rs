//! Seeded synthetic data.
//!
//! The stream is ChaCha8 seeded through `seed_from_u64`. A random element
//! of `Z_p / p^N` concatenates `ceil(N log2(p) / 64) + 1` words, most
//! significant first, and reduces the integer modulo `p^N`.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::one_var::{LPair, Provenance};
use super::two_var::FourMatrix;
use crate::error::Result;
use crate::padic::{ppow, ExtensionElement, PadicNumber, Ring};
use crate::series::{Algebra, GroupRingElement, Mat2, TruncSeries1, TruncSeries2};

/// A deterministic source of synthetic inputs.
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// A random integer modulo `p^prec`.
    pub fn residue(&mut self, p: u32, prec: i64) -> BigUint {
        let modulus = ppow(p, prec.max(0));
        let words = (modulus.bits() / 64 + 2) as usize;
        let mut acc = BigUint::from(0u32);
        for _ in 0..words {
            acc = (acc << 64u32) + BigUint::from(self.next_u64());
        }
        acc % modulus
    }

    pub fn element(&mut self, ring: &Ring) -> ExtensionElement {
        let x = BigInt::from(self.residue(ring.p(), ring.prec()));
        ExtensionElement::from_padic(ring, &PadicNumber::from_bigint(ring.p(), &x, ring.prec()))
    }

    /// A unit of `Z_p`.
    pub fn unit(&mut self, ring: &Ring) -> ExtensionElement {
        loop {
            let c = self.element(ring);
            if c.coord_valuation() == 0 {
                return c;
            }
        }
    }

    /// A series whose first `len` coefficients are random.
    pub fn series(&mut self, ring: &Ring, cap: usize, len: usize) -> TruncSeries1 {
        let mut s = TruncSeries1::zero(ring, cap);
        for k in 0..len.min(cap) {
            s.set_coeff(k, self.element(ring));
        }
        s
    }

    /// A random integral pair with every coefficient random.
    pub fn pair(&mut self, ring: &Ring, cap: usize) -> Result<LPair> {
        let sharp = self.series(ring, cap, cap);
        let flat = self.series(ring, cap, cap);
        LPair::new(sharp, flat, Provenance::Synthetic)
    }

    pub fn series2(&mut self, ring: &Ring, caps: (usize, usize)) -> TruncSeries2 {
        let mut s = TruncSeries2::zero(ring, caps);
        for i in 0..caps.0 {
            for j in 0..caps.1 {
                s.set(i, j, self.element(ring));
            }
        }
        s
    }

    /// A random integral four-matrix, entries in row-major order.
    pub fn four(&mut self, ring: &Ring, caps: (usize, usize)) -> FourMatrix {
        let a = self.series2(ring, caps);
        let b = self.series2(ring, caps);
        let c = self.series2(ring, caps);
        let d = self.series2(ring, caps);
        Mat2::new(a, b, c, d)
    }

    pub fn group_ring(&mut self, ring: &Ring, level: u32) -> Result<GroupRingElement> {
        let len = (ring.p() as usize).pow(level);
        let coeffs = (0..len).map(|_| self.element(ring)).collect();
        GroupRingElement::from_coeffs(ring, level, coeffs)
    }

    /// `theta_0, ..., theta_(n_max)` with random `theta_0, theta_1` and
    /// `pi(theta_(n+1)) = a_p theta_n - nu(theta_(n-1))`, each higher level
    /// completed by a random element of the kernel of `pi`.
    pub fn theta_tower(&mut self, ring: &Ring, n_max: u32) -> Result<Vec<GroupRingElement>> {
        let mut theta = Vec::with_capacity(n_max as usize + 1);
        theta.push(self.group_ring(ring, 0)?);
        if n_max >= 1 {
            theta.push(self.group_ring(ring, 1)?);
        }
        for n in 1..n_max {
            let n_us = n as usize;
            let target = theta[n_us].scale_i64(ring.ap()).sub(&theta[n_us - 1].lift_nu());
            let r = self.group_ring(ring, n + 1)?;
            let next = lift_first(&target)?.add(&r).sub(&lift_first(&r.project_pi()?)?);
            theta.push(next);
        }
        Ok(theta)
    }

    /// A column with a unit in the constant term of its second entry, so
    /// that it is primitive, and a random row. The first entry carries
    /// `p^mu` with `mu < 3`.
    pub fn rank1_pair(&mut self, ring: &Ring, cap: usize, degree: usize) -> Result<([TruncSeries1; 2], [TruncSeries1; 2])> {
        let mu = self.below(3) as i64;
        let c0 = loop {
            let c = self.series(ring, cap, degree + 1).map(|c| c.shift(mu));
            if !c.is_zero() {
                break c;
            }
        };
        let mut c1 = self.series(ring, cap, degree + 1);
        c1.set_coeff(0, self.unit(ring));
        let r0 = self.series(ring, cap, degree + 1);
        let r1 = self.series(ring, cap, degree + 1);
        Ok(([c0, c1], [r0, r1]))
    }

    /// `p^mu * distinguished * unit` with `mu <= 2` and `lambda <= 4`; the
    /// planted invariants are returned alongside.
    pub fn prepared(&mut self, ring: &Ring, cap: usize) -> (TruncSeries1, i64, usize) {
        let mu = self.below(3) as i64;
        let lambda = self.below(5) as usize;
        let mut d = TruncSeries1::zero(ring, cap);
        for k in 0..lambda {
            d.set_coeff(k, self.element(ring).shift(1));
        }
        d.set_coeff(lambda, ExtensionElement::one(ring));
        let mut u = self.series(ring, cap, cap.min(6));
        u.set_coeff(0, self.unit(ring));
        (d.mul(&u).map(|c| c.shift(mu)), mu, lambda)
    }

    /// `p^mu * f1(X) * f2(X, Y) * unit` with `f1` distinguished in `X` over
    /// `(p)` and `f2` distinguished in `Y` over `(p, X)`, `mu, lambda1,
    /// lambda2 <= 2`. Returns the series and the planted invariants.
    pub fn prepared2(&mut self, ring: &Ring, caps: (usize, usize)) -> (TruncSeries2, i64, usize, usize) {
        let mu = self.below(3) as i64;
        let l1 = self.below(3) as usize;
        let l2 = self.below(3) as usize;
        let mut f1 = TruncSeries2::zero(ring, caps);
        for i in 0..l1 {
            f1.set(i, 0, self.element(ring).shift(1));
        }
        f1.set(l1, 0, ExtensionElement::one(ring));
        let mut f2 = TruncSeries2::zero(ring, caps);
        for l in 0..l2 {
            f2.set(0, l, self.element(ring).shift(1));
            for i in 1..3.min(caps.0) {
                f2.set(i, l, self.element(ring));
            }
        }
        f2.set(0, l2, ExtensionElement::one(ring));
        let mut u = TruncSeries2::zero(ring, caps);
        for i in 0..2.min(caps.0) {
            for j in 0..2.min(caps.1) {
                u.set(i, j, self.element(ring));
            }
        }
        u.set(0, 0, self.unit(ring));
        (f1.mul(&f2).mul(&u).map(|c| c.shift(mu)), mu, l1, l2)
    }
}

/// The element of level `n + 1` with the coefficients of `g` in the first
/// `p^n` slots, a section of `pi`.
fn lift_first(g: &GroupRingElement) -> Result<GroupRingElement> {
    let ring = g.ring();
    let len = (ring.p() as usize).pow(g.level() + 1);
    let mut coeffs: Vec<ExtensionElement> = g.coeffs().to_vec();
    coeffs.resize(len, ExtensionElement::zero(ring));
    GroupRingElement::from_coeffs(ring, g.level() + 1, coeffs)
}
