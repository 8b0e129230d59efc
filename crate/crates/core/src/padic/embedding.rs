use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg;

use super::element::ExtensionElement;
use super::fp;
use super::frobenius::hensel_root;
use super::number::PadicNumber;
use super::ring::{Ring, RingDescriptor};

/// Inclusion of a coefficient ring into a larger one along the cyclotomic
/// and unramified directions.
pub struct Embedding {
    from: Ring,
    to: Ring,
    stride: usize,
    /// Images of `w^u` as unramified coordinates of the target, when the
    /// unramified levels differ.
    images: Option<Vec<Vec<PadicNumber>>>,
    /// Columns of `images` independent modulo p and the inverse of the
    /// square block they form.
    pivots: Vec<usize>,
    block_inv: Vec<Vec<PadicNumber>>,
}

impl Embedding {
    pub fn new(from: &Ring, to: &Ring) -> Result<Self> {
        let ok = from.p() == to.p()
            && from.ap() == to.ap()
            && (!from.has_quad() || to.has_quad())
            && from.cyc_level() <= to.cyc_level()
            && from.unram_level() <= to.unram_level();
        if !ok {
            return Err(Error::NotASubring);
        }
        let p = from.p() as usize;
        let stride = p.pow(to.cyc_level() - from.cyc_level());
        let mut e = Embedding {
            from: from.clone(),
            to: to.clone(),
            stride,
            images: None,
            pivots: Vec::new(),
            block_inv: Vec::new(),
        };
        if from.unram_level() < to.unram_level() {
            let images = unram_images(from, to)?;
            let rows: Vec<Vec<u64>> = images
                .iter()
                .map(|r| r.iter().map(|x| x.residue(1).map_or(0, |v| v.try_into().unwrap_or(0))).collect())
                .collect();
            let pivots = linalg::independent_columns(&rows, p as u64);
            if pivots.len() != images.len() {
                return Err(Error::NonConvergent);
            }
            let block: Vec<Vec<PadicNumber>> =
                images.iter().map(|r| pivots.iter().map(|&j| r[j].clone()).collect()).collect();
            e.block_inv = linalg::invert(&block)?;
            e.pivots = pivots;
            e.images = Some(images);
        }
        Ok(e)
    }

    pub fn source(&self) -> &Ring {
        &self.from
    }

    pub fn target(&self) -> &Ring {
        &self.to
    }

    pub fn apply(&self, x: &ExtensionElement) -> Result<ExtensionElement> {
        if !x.ring().same_shape(&self.from) {
            return Err(Error::DescriptorMismatch);
        }
        let (f, t) = (&self.from, &self.to);
        let p = f.p();
        let mut coords = alloc::vec![PadicNumber::exact_zero(p); t.rank()];
        for q in 0..f.quad_rank() {
            for c in 0..f.cyc_rank() {
                for u in 0..f.unram_rank() {
                    let a = x.coord(q, c, u);
                    if a.is_exact_zero() {
                        continue;
                    }
                    match &self.images {
                        None => coords[t.index(q, c * self.stride, u)] = a.clone(),
                        Some(img) => {
                            for (v, w) in img[u].iter().enumerate() {
                                let i = t.index(q, c * self.stride, v);
                                coords[i] = coords[i].add(&a.mul(w));
                            }
                        }
                    }
                }
            }
        }
        ExtensionElement::from_coords(t, coords)
    }

    /// Preimage of an element of the image; [`Error::NotASubring`] when
    /// the element does not lie in the subring at its precision.
    pub fn project(&self, y: &ExtensionElement) -> Result<ExtensionElement> {
        if !y.ring().same_shape(&self.to) {
            return Err(Error::DescriptorMismatch);
        }
        let (f, t) = (&self.from, &self.to);
        let p = f.p();
        let mut coords = alloc::vec![PadicNumber::exact_zero(p); f.rank()];
        for q in 0..f.quad_rank() {
            for c in 0..f.cyc_rank() {
                let block: Vec<PadicNumber> =
                    (0..t.unram_rank()).map(|v| y.coord(q, c * self.stride, v).clone()).collect();
                let pre = match &self.images {
                    None => block,
                    Some(_) => {
                        let picked: Vec<PadicNumber> = self.pivots.iter().map(|&j| block[j].clone()).collect();
                        linalg::vec_mat(&picked, &self.block_inv)
                    }
                };
                for (u, a) in pre.into_iter().enumerate() {
                    coords[f.index(q, c, u)] = a;
                }
            }
        }
        let x = ExtensionElement::from_coords(&f.at_prec(t.prec())?, coords)?;
        if !self.apply(&x.recast(f)?)?.agrees(y) {
            return Err(Error::NotASubring);
        }
        x.recast(f)
    }
}

/// Images of `w_from^u` inside the unramified factor of `to`: the
/// Hensel lift of the first root of the smaller defining polynomial in the
/// base-p enumeration of the larger residue field.
fn unram_images(from: &Ring, to: &Ring) -> Result<Vec<Vec<PadicNumber>>> {
    let unram: Ring = RingDescriptor::new(to.p(), to.ap(), super::RingKind::Unram(to.unram_level()), to.prec())?;
    if from.unram_level() == 0 {
        return Ok(alloc::vec![ExtensionElement::one(&unram).coords().to_vec()]);
    }
    let p = from.p() as u64;
    let big = to.unram_poly();
    let small = from.unram_poly();
    let ut = to.unram_rank();
    let size = p.pow(ut as u32);
    let root = (1..size)
        .map(|t| fp::digits(t, ut, p))
        .find(|cand| {
            let mut acc: Vec<u64> = Vec::new();
            for &c in small.iter().rev() {
                acc = fp::mul(&acc, cand, p);
                acc = fp::rem(&acc, big, p);
                if c != 0 {
                    acc = fp::sub(&acc, &[(p - c) % p], p);
                }
            }
            acc.iter().all(|&x| x == 0)
        })
        .ok_or(Error::NonConvergent)?;
    let ints: Vec<BigInt> = root.iter().map(|&r| BigInt::from(r)).collect();
    let x0 = ExtensionElement::from_ints(&unram, 0, &ints, unram.prec());
    let poly: Vec<i64> = small.iter().map(|&c| c as i64).collect();
    let theta = hensel_root(&poly, &x0)?;
    let mut out = Vec::with_capacity(from.unram_rank());
    let mut acc = ExtensionElement::one(&unram);
    for _ in 0..from.unram_rank() {
        out.push(acc.coords().to_vec());
        acc = acc.mul(&theta);
    }
    Ok(out)
}
