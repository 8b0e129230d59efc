use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::padic::PadicNumber;

/// `b_1 = 1, b_2 = a_p, b_(i+2) = a_p b_(i+1) - b_i` and
/// `(x_k, x_(k-1)) = (1, 0) A^k / p^k` for `A = [[a_p, p], [-1, 0]]`.
#[derive(Clone, Debug)]
pub struct RecurrenceTables {
    /// `b[i - 1] = b_i`.
    pub b: Vec<BigInt>,
    /// `numerators[k] = p^k x_k`, exact integers.
    pub numerators: Vec<BigInt>,
    pub x: Vec<PadicNumber>,
    /// Least valuation among the `x_k`.
    pub x_floor: i64,
}

impl RecurrenceTables {
    pub fn b_i(&self, i: usize) -> &BigInt {
        &self.b[i - 1]
    }
}

/// Tables up to `b_(i_max)` and `x_(k_max)`, the `x_k` to absolute
/// precision `prec`.
pub fn recurrence_tables(p: u32, ap: i64, i_max: usize, k_max: usize, prec: i64) -> RecurrenceTables {
    let a = BigInt::from(ap);
    let pb = BigInt::from(p);
    let mut b = Vec::with_capacity(i_max.max(2));
    b.push(BigInt::from(1));
    b.push(a.clone());
    while b.len() < i_max {
        let n = b.len();
        b.push(&a * &b[n - 1] - &b[n - 2]);
    }
    b.truncate(i_max.max(2));
    // p^(k+1) x_(k+1) = a_p p^k x_k - p p^(k-1) x_(k-1)
    let mut num = Vec::with_capacity(k_max + 1);
    num.push(BigInt::from(1));
    num.push(a.clone());
    while num.len() <= k_max {
        let n = num.len();
        num.push(&a * &num[n - 1] - &pb * &num[n - 2]);
    }
    num.truncate(k_max + 1);
    let x: Vec<PadicNumber> =
        num.iter().enumerate().map(|(k, c)| PadicNumber::from_bigint(p, c, prec + k as i64).shift(-(k as i64))).collect();
    let x_floor = x.iter().filter_map(|v| v.valuation()).min().unwrap_or(0);
    RecurrenceTables { b, numerators: num, x, x_floor }
}
