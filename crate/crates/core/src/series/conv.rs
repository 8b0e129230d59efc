//! Integer images of coefficient vectors, used by the fast product paths.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::padic::{mul_ints, ppow, reduce_raw, ExtensionElement, Ring};

/// `p^shift * ints[k]` approximates coefficient `k` modulo `p^prec`.
pub(crate) struct Packed {
    pub shift: i64,
    pub ints: Vec<Vec<BigInt>>,
    pub prec: i64,
}

/// Packs coefficients against their common least valuation; `None` when
/// every coefficient is exact zero.
pub(crate) fn pack(coeffs: &[ExtensionElement]) -> Option<Packed> {
    let scaled: Vec<_> = coeffs.iter().map(|c| c.scaled()).collect();
    let shift = scaled.iter().flatten().map(|s| s.shift).min()?;
    let prec = scaled.iter().flatten().map(|s| s.prec).min()?;
    let rank = coeffs[0].ring().rank();
    let p = coeffs[0].p();
    let ints = scaled
        .into_iter()
        .map(|s| match s {
            None => vec![BigInt::zero(); rank],
            Some(s) => {
                let f = BigInt::from(ppow(p, s.shift - shift));
                s.ints.into_iter().map(|x| x * &f).collect()
            }
        })
        .collect();
    Some(Packed { shift, ints, prec })
}

pub(crate) fn unpack(ring: &Ring, shift: i64, ints: &[Vec<BigInt>], prec: i64) -> Vec<ExtensionElement> {
    ints.iter().map(|v| ExtensionElement::from_ints(ring, shift, v, prec)).collect()
}

/// Precision and shift of a product of packed operands, or `None` when it
/// vanishes at its precision.
pub(crate) fn product_frame(ring: &Ring, a: &Packed, b: &Packed) -> (i64, i64) {
    let prec = (a.shift.saturating_add(b.prec)).min(b.shift.saturating_add(a.prec)).min(ring.prec());
    (a.shift + b.shift, prec)
}

/// Coefficient product, accumulating into `acc`.
pub(crate) fn mul_acc(ring: &Ring, acc: &mut [BigInt], x: &[BigInt], y: &[BigInt]) {
    if ring.rank() == 1 {
        acc[0] += &x[0] * &y[0];
        return;
    }
    if x.iter().all(|v| v.is_zero()) || y.iter().all(|v| v.is_zero()) {
        return;
    }
    for (a, b) in acc.iter_mut().zip(mul_ints(ring, x, y, None)) {
        *a += b;
    }
}

pub(crate) fn reduce_mod(v: &mut [BigInt], m: &BigInt) {
    for x in v.iter_mut() {
        *x = x.mod_floor(m);
    }
}

pub(crate) fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn write_slot(buf: &mut [u32], slot: usize, width: usize, x: &BigUint) {
    let d = x.to_u32_digits();
    buf[slot * width..slot * width + d.len()].copy_from_slice(&d);
}

/// Product of two packed series laid out on `dims` (outermost first),
/// truncated to `dims`, by Kronecker substitution. Entries are reduced
/// modulo `m`.
pub(crate) fn kron_mul(ring: &Ring, a: &Packed, b: &Packed, dims: &[usize], m: &BigInt) -> Vec<Vec<BigInt>> {
    let (qr, cr, ur) = (ring.quad_rank(), ring.cyc_rank(), ring.unram_rank());
    let (qw, cw, uw) = (2 * qr - 1, 2 * cr - 1, 2 * ur - 1);
    let rw = qw * cw * uw;
    // widths of the series dimensions in the raw layout
    let mut widths: Vec<usize> = dims.iter().map(|&d| 2 * d - 1).collect();
    widths[0] = dims[0];
    let raw_series = |mut k: usize| -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (d, w) in dims.iter().zip(&widths).rev() {
            idx += (k % d) * stride;
            k /= d;
            stride *= w;
        }
        idx
    };
    let positions: usize = dims.iter().product();
    let slots = widths.iter().product::<usize>() * rw;
    let terms = (positions * ring.rank()) as u64;
    let bits = 2 * m.bits() + 64 - terms.leading_zeros() as u64 + 1;
    let width = bits.div_ceil(32) as usize;
    let encode = |pk: &Packed| -> BigUint {
        let mut buf = vec![0u32; slots * width];
        for (k, v) in pk.ints.iter().enumerate() {
            let base = raw_series(k) * rw;
            for (i, x) in v.iter().enumerate() {
                let x = x.mod_floor(m);
                if x.is_zero() {
                    continue;
                }
                let (q, c, u) = ring.split_index(i);
                let slot = base + (q * cw + c) * uw + u;
                write_slot(&mut buf, slot, width, x.magnitude());
            }
        }
        BigUint::new(buf)
    };
    let prod = (encode(a) * encode(b)).to_u32_digits();
    let read = |slot: usize| -> BigInt {
        let lo = slot * width;
        if lo >= prod.len() {
            return BigInt::zero();
        }
        let hi = (lo + width).min(prod.len());
        BigInt::from(BigUint::from_slice(&prod[lo..hi]))
    };
    (0..positions)
        .map(|k| {
            let base = raw_series(k) * rw;
            let raw: Vec<BigInt> = (0..rw).map(|r| read(base + r)).collect();
            if rw == 1 {
                vec![raw[0].mod_floor(m)]
            } else {
                reduce_raw(ring, raw, Some(m))
            }
        })
        .collect()
}
