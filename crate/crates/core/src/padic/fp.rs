//! Polynomials over the prime field, as coefficient vectors (lowest degree first).

use alloc::vec;
use alloc::vec::Vec;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(r)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(r)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let d = m.len() - 1;
    let lead_inv = inv_mod(m[d], p);
    while r.len() > d {
        let k = r.len() - 1 - d;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p * p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^k)` modulo `m`.
fn frob_power_of_x(m: &[u64], k: u32, p: u64) -> Vec<u64> {
    let mut acc = rem(&[0, 1], m, p);
    for _ in 0..k {
        acc = pow_poly(&acc, p, m, p);
    }
    acc
}

pub fn pow_poly(b: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut base = rem(b, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
        base = rem(&mul(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `d`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = (f.len() - 1) as u32;
    if d == 1 {
        return true;
    }
    let x = [0u64, 1];
    if frob_power_of_x(f, d, p) != rem(&x, f, p) {
        return false;
    }
    prime_factors(d).into_iter().all(|q| {
        let h = sub(&frob_power_of_x(f, d / q, p), &x, p);
        gcd(f, &h, p).len() == 1
    })
}

/// The first monic irreducible of degree `d`, ordering candidates by the
/// base-p integer whose digits are the non-leading coefficients.
pub fn first_irreducible(d: usize, p: u64) -> Vec<u64> {
    let mut t: u64 = 0;
    loop {
        let mut f = vec![0u64; d + 1];
        let mut s = t;
        for c in f.iter_mut().take(d) {
            *c = s % p;
            s /= p;
        }
        f[d] = 1;
        if f[0] != 0 && is_irreducible(&f, p) || d == 1 && f[0] == 0 {
            return f;
        }
        t += 1;
    }
}

/// The digits of `t` in base p, as `len` field coordinates.
pub fn digits(mut t: u64, len: usize, p: u64) -> Vec<u64> {
    let mut v = vec![0u64; len];
    for c in v.iter_mut() {
        *c = t % p;
        t /= p;
    }
    v
}

/// Solves `a x = b` over F_p for square `a` (row-major); `None` if singular.
pub fn solve(a: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r: Vec<u64> = row.iter().map(|x| x % p).collect();
            r.push(bi % p);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, piv);
        let inv = inv_mod(m[col][col], p);
        for x in m[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let f = m[r][col];
                for c in col..=n {
                    let sub = f * m[col][c] % p;
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_over_f3() {
        let f = first_irreducible(3, 3);
        assert_eq!(f, vec![1, 2, 0, 1]);
        assert!(is_irreducible(&f, 3));
        assert!(!is_irreducible(&[2, 0, 0, 1], 3));
    }

    #[test]
    fn solve_small() {
        let a = vec![vec![1, 2], vec![0, 1]];
        assert_eq!(solve(&a, &[1, 1], 3), Some(vec![2, 1]));
        assert_eq!(solve(&[vec![1, 1], vec![1, 1]], &[1, 0], 3), None);
    }
}
