use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{ppow, reduce_full, Embedding, ExtensionElement, Ring, Valuation};

use super::conv::{pack, reduce_mod};
use super::group_ring::GroupRingElement;
use super::trunc1::TruncSeries1;

/// What is known about the coefficients beyond the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailFloor {
    /// The series is a polynomial of degree below the cap.
    Polynomial,
    /// Every coefficient has valuation at least this.
    Constant(Valuation),
    /// Coefficient `j` has valuation at least
    /// `-slope * floor(log_p j) - offset`.
    LogGrowth { slope: Valuation, offset: Valuation },
}

impl TailFloor {
    /// Least value of `j v + floor(j)` over `j >= cap`.
    fn bound(&self, p: u32, cap: usize, v: Valuation) -> Option<Valuation> {
        let cap = cap.max(1) as i64;
        match *self {
            TailFloor::Polynomial => None,
            TailFloor::Constant(c) => Some(v * cap + c),
            TailFloor::LogGrowth { slope, offset: off } => {
                let p = p as i64;
                let mut k = log_floor(p, cap);
                let mut best = v * cap - slope * k - off;
                loop {
                    k += 1;
                    let pk = match p.checked_pow(k as u32) {
                        Some(x) if k < 62 => x,
                        _ => break,
                    };
                    let cand = v * pk - slope * k - off;
                    if cand < best {
                        best = cand;
                    }
                    if v * pk * (p - 1) >= slope {
                        break;
                    }
                }
                Some(best)
            }
        }
    }
}

fn log_floor(p: i64, j: i64) -> i64 {
    let mut k = 0;
    let mut x = p;
    while x <= j {
        k += 1;
        x = match x.checked_mul(p) {
            Some(y) => y,
            None => break,
        };
    }
    k
}

/// A value together with the valuation up to which it is certified.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: ExtensionElement,
    /// Valuation bound of the discarded tail; `None` when nothing was
    /// discarded.
    pub tail: Option<Valuation>,
}

/// Coordinate precision implied by a valuation bound `t` on an element.
fn coordinate_cap(ring: &Ring, t: Valuation) -> i64 {
    let c = t.ceil().to_integer();
    if ring.rank() == 1 || ring.ramification() == 1 {
        c
    } else if ring.is_domain() {
        c - 1
    } else {
        c - 2
    }
}

/// `sum c_j x^j` with the coefficients moved into the ring of `x`.
pub fn eval_at(f: &TruncSeries1, x: &ExtensionElement, tail: TailFloor) -> Result<Evaluation> {
    let target = x.ring();
    let v = if x.is_zero() {
        Valuation::from_integer(x.prec())
    } else {
        x.valuation_floor()
    };
    if v <= Valuation::from_integer(0) {
        return Err(Error::NotInDisk);
    }
    let g = if f.ring().same_shape(target) {
        f.recast(target)?
    } else {
        f.embed(&Embedding::new(&f.ring().at_prec(target.prec())?, target)?)?
    };
    let value = g.horner(x);
    let bound = tail.bound(target.p(), f.cap(), v);
    let value = match bound {
        Some(t) => value.with_prec(coordinate_cap(target, t)),
        None => value,
    };
    Ok(Evaluation { value, tail: bound })
}

/// Reduction to a finite level together with its determinacy data.
#[derive(Debug, Clone)]
pub struct LevelReduction {
    pub element: GroupRingElement,
    /// The cap is below `p^n`, so the discarded tail is not small.
    pub cap_too_small: bool,
    /// The discarded tail lies in `p^tail_bound` times the integral group
    /// ring when the missing coefficients obey the coordinate floor of the
    /// known ones.
    pub tail_bound: i64,
}

/// The image of `f` in `R[X]/((1+X)^(p^n) - 1)`, reading `f` as the
/// polynomial formed by its coefficients.
pub fn reduce_to_level(f: &TruncSeries1, n: u32) -> Result<LevelReduction> {
    let ring = f.ring();
    let p = ring.p();
    let len = (p as usize).pow(n);
    let cap = f.cap();
    let tail_bound = f.coord_valuation().saturating_add((cap / len) as i64);
    let packed = match pack(f.coeffs()) {
        Some(x) => x,
        None => {
            return Ok(LevelReduction { element: GroupRingElement::zero(ring, n), cap_too_small: cap < len, tail_bound })
        }
    };
    let rel = (packed.prec - packed.shift).max(0);
    let m = BigInt::from(ppow(p, rel));
    let rank = ring.rank();
    let mut acc = vec![vec![BigInt::zero(); rank]; len];
    let mut power = vec![BigInt::zero(); len];
    power[0] = BigInt::from(1);
    for c in packed.ints.iter() {
        if !c.iter().all(|x| x.is_zero()) {
            for (k, pk) in power.iter().enumerate() {
                if pk.is_zero() {
                    continue;
                }
                for (a, ci) in acc[k].iter_mut().zip(c) {
                    *a += ci * pk;
                }
            }
        }
        let last = power[len - 1].clone();
        let mut next = vec![BigInt::zero(); len];
        for k in 0..len {
            let prev = if k == 0 { &last } else { &power[k - 1] };
            next[k] = prev - &power[k];
        }
        reduce_mod(&mut next, &m);
        power = next;
    }
    let coeffs: Vec<ExtensionElement> = acc
        .into_iter()
        .map(|mut v| {
            reduce_mod(&mut v, &m);
            ExtensionElement::from_ints(ring, packed.shift, &v, packed.prec)
        })
        .collect();
    Ok(LevelReduction {
        element: GroupRingElement::from_coeffs(ring, n, coeffs)?,
        cap_too_small: cap < len,
        tail_bound,
    })
}

/// The ring map `1+X -> zeta_(p^j)^e`; `j = 0` gives the augmentation.
/// Values land in the coefficient ring extended by a cyclotomic factor of
/// level `j`.
pub fn eval_character(g: &GroupRingElement, j: u32, e: i64) -> Result<ExtensionElement> {
    let src = g.ring();
    if src.cyc_level() != 0 {
        return Err(Error::UnsupportedRing("coefficients already cyclotomic"));
    }
    if j > g.level() {
        return Err(Error::InvalidParameters(alloc::format!("character level {j} above {}", g.level())));
    }
    let target = src.with(src.has_quad(), j, src.unram_level())?;
    let packed = match pack(g.coeffs()) {
        Some(x) => x,
        None => return Ok(ExtensionElement::zero(&target)),
    };
    let width = (src.p() as usize).pow(j);
    let (qr, ur) = (src.quad_rank(), src.unram_rank());
    let mut t = vec![BigInt::zero(); qr * width * ur];
    let ew = e.rem_euclid(width as i64) as usize;
    for (k, c) in packed.ints.iter().enumerate() {
        let pos = (ew * k) % width;
        for q in 0..qr {
            for u in 0..ur {
                t[(q * width + pos) * ur + u] += &c[src.index(q, 0, u)];
            }
        }
    }
    let ints = reduce_full(&target, t, width, None);
    Ok(ExtensionElement::from_ints(&target, packed.shift, &ints, packed.prec))
}
