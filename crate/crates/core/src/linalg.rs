//! Dense linear algebra over Z_p, F_p and Z/p^K.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::padic::PadicNumber;
use crate::padic::fp;

/// Inverse of a square matrix over Q_p by Gauss-Jordan elimination with
/// least-valuation pivots.
pub fn invert(m: &[Vec<PadicNumber>]) -> Result<Vec<Vec<PadicNumber>>> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = m[0][0].prime();
    let prec = m.iter().flatten().map(|x| x.prec_or_max()).min().unwrap_or(i64::MAX);
    let mut a: Vec<Vec<PadicNumber>> = m.to_vec();
    let mut inv: Vec<Vec<PadicNumber>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { PadicNumber::one(p, prec) } else { PadicNumber::exact_zero(p) }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].valuation_floor())
            .ok_or(Error::DivisionByZeroAtPrecision)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let pinv = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pinv);
            inv[col][j] = inv[col][j].mul(&pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_exact_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = f.mul(&a[col][j]);
                a[r][j] = a[r][j].sub(&t);
                let t = f.mul(&inv[col][j]);
                inv[r][j] = inv[r][j].sub(&t);
            }
        }
    }
    Ok(inv)
}

/// Indices of a maximal set of columns independent modulo p, chosen greedily
/// from the left.
pub fn independent_columns(rows: &[Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for j in 0..ncols {
        let mut v: Vec<u64> = rows.iter().map(|r| r[j] % p).collect();
        for (pivot, b) in &basis {
            let f = v[*pivot];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|&x| x != 0) {
            let inv = fp::inv_mod(v[pivot], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            basis.push((pivot, v));
            chosen.push(j);
        }
    }
    chosen
}

/// Row vector times matrix over Q_p.
pub fn vec_mat(v: &[PadicNumber], m: &[Vec<PadicNumber>]) -> Vec<PadicNumber> {
    let p = v.first().map_or(3, |x| x.prime());
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            v.iter()
                .zip(m)
                .fold(PadicNumber::exact_zero(p), |acc, (x, row)| acc.add(&x.mul(&row[j])))
        })
        .collect()
}

/// Outcome of solving `A x = b` over `Z / p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModSolve {
    /// A solution, determined modulo `p^(k - loss)`.
    Solved { x: Vec<u128>, loss: u32 },
    Inconsistent,
}

fn vp(mut x: u128, p: u128, k: u32) -> u32 {
    if x == 0 {
        return k;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (a as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m as i128) as u128
}

/// Smith-style elimination with full pivoting on least valuation.
/// Requires `p^k < 2^63`.
pub fn solve_mod_pk(a: &[Vec<u128>], b: &[u128], p: u64, k: u32) -> Result<ModSolve> {
    let p = p as u128;
    let m = p.checked_pow(k).filter(|&m| m < (1u128 << 63)).ok_or_else(|| Error::InvalidParameters("modulus too large".into()))?;
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u128>> = a.iter().map(|r| r.iter().map(|x| x % m).collect()).collect();
    let mut b: Vec<u128> = b.iter().map(|x| x % m).collect();
    // column operations, recorded so that x = V y
    let mut v: Vec<Vec<u128>> = (0..cols).map(|i| (0..cols).map(|j| u128::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    while r < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, &x) in row.iter().enumerate().skip(r) {
                let e = vp(x, p, k);
                if e < k && best.is_none_or(|(be, _, _)| e < be) {
                    best = Some((e, i, j));
                }
            }
        }
        let Some((e, i, j)) = best else { break };
        a.swap(r, i);
        b.swap(r, i);
        for row in a.iter_mut() {
            row.swap(r, j);
        }
        for row in v.iter_mut() {
            row.swap(r, j);
        }
        let pe = p.pow(e);
        let unit_inv = inv_mod((a[r][r] / pe) % m, m);
        for i in r + 1..rows {
            if a[i][r] == 0 {
                continue;
            }
            let f = (a[i][r] / pe) % m * unit_inv % m;
            for j in r..cols {
                let t = f * a[r][j] % m;
                a[i][j] = (a[i][j] + m - t) % m;
            }
            b[i] = (b[i] + m - f * b[r] % m) % m;
        }
        for j in r + 1..cols {
            if a[r][j] == 0 {
                continue;
            }
            let f = (a[r][j] / pe) % m * unit_inv % m;
            for i in r..rows {
                let t = f * a[i][r] % m;
                a[i][j] = (a[i][j] + m - t) % m;
            }
            for row in v.iter_mut() {
                let t = f * row[r] % m;
                row[j] = (row[j] + m - t) % m;
            }
        }
        pivots.push((e, unit_inv));
        r += 1;
    }
    let mut y = vec![0u128; cols];
    let mut loss = 0;
    for (i, &(e, uinv)) in pivots.iter().enumerate() {
        if vp(b[i], p, k) < e {
            return Ok(ModSolve::Inconsistent);
        }
        y[i] = (b[i] / p.pow(e)) % m * uinv % m;
        loss = loss.max(e);
    }
    if b[pivots.len()..].iter().any(|&x| x != 0) {
        return Ok(ModSolve::Inconsistent);
    }
    let x = (0..cols)
        .map(|i| v[i].iter().zip(&y).fold(0u128, |acc, (vij, yj)| (acc + vij * yj % m) % m))
        .collect();
    Ok(ModSolve::Solved { x, loss })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_solve() {
        let a = vec![vec![3, 1], vec![0, 9]];
        match solve_mod_pk(&a, &[5, 18], 3, 3).unwrap() {
            ModSolve::Solved { x, .. } => {
                assert_eq!((3 * x[0] + x[1]) % 27, 5);
                assert_eq!((9 * x[1]) % 27, 18);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(solve_mod_pk(&a, &[5, 1], 3, 3).unwrap(), ModSolve::Inconsistent);
        match solve_mod_pk(&[vec![9]], &[18], 3, 3).unwrap() {
            ModSolve::Solved { x, loss } => assert_eq!((loss, x[0] % 3), (2, 2)),
            other => panic!("{other:?}"),
        }
        let z = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(solve_mod_pk(&z, &[0, 0], 3, 3).unwrap(), ModSolve::Solved { x: vec![0, 0], loss: 0 });
        assert_eq!(solve_mod_pk(&z, &[0, 3], 3, 3).unwrap(), ModSolve::Inconsistent);
    }
}
