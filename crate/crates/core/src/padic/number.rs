use alloc::string::ToString;
use core::cmp::{max, min};
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `p^k` as a big integer.
pub fn ppow(p: u32, k: i64) -> BigUint {
    debug_assert!(k >= 0);
    BigUint::from(p).pow(k as u32)
}

/// p-adic valuation of a nonzero integer, together with its p-free part.
pub fn split_p(p: u32, x: &BigUint) -> (i64, BigUint) {
    let pb = BigUint::from(p);
    let mut v = 0;
    let mut r = x.clone();
    loop {
        let (q, rem) = r.div_rem(&pb);
        if !rem.is_zero() {
            return (v, r);
        }
        r = q;
        v += 1;
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum State {
    Exact,
    ZeroAt(i64),
    Value { val: i64, unit: BigUint, prec: i64 },
}

/// An element of Q_p known modulo `p^prec`.
///
/// Stored as `p^val * unit` with `0 < unit < p^(prec - val)` and `unit`
/// prime to p. Exact zero is a separate state with no precision bound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    p: u32,
    state: State,
}

impl PadicNumber {
    pub fn exact_zero(p: u32) -> Self {
        PadicNumber { p, state: State::Exact }
    }

    pub fn zero_at(p: u32, prec: i64) -> Self {
        PadicNumber { p, state: State::ZeroAt(prec) }
    }

    /// `p^base * residue` modulo `p^prec`, where residue is any integer.
    pub fn from_scaled(p: u32, base: i64, residue: &BigInt, prec: i64) -> Self {
        if prec <= base {
            return Self::zero_at(p, prec);
        }
        let m = BigInt::from(ppow(p, prec - base));
        let r = residue.mod_floor(&m);
        let r = r.to_biguint().expect("nonnegative residue");
        Self::normalize(p, base, r, prec)
    }

    fn normalize(p: u32, base: i64, r: BigUint, prec: i64) -> Self {
        if r.is_zero() {
            return Self::zero_at(p, prec);
        }
        let (k, unit) = split_p(p, &r);
        let val = base + k;
        if val >= prec {
            return Self::zero_at(p, prec);
        }
        PadicNumber { p, state: State::Value { val, unit, prec } }
    }

    pub fn from_i64(p: u32, x: i64, prec: i64) -> Self {
        Self::from_bigint(p, &BigInt::from(x), prec)
    }

    pub fn from_bigint(p: u32, x: &BigInt, prec: i64) -> Self {
        if x.is_zero() {
            return Self::zero_at(p, prec);
        }
        Self::from_scaled(p, 0, x, prec)
    }

    /// The rational `num / den` at absolute precision `prec`.
    pub fn from_ratio(p: u32, num: i64, den: i64, prec: i64) -> Result<Self> {
        let d = Self::from_i64(p, den, prec + 64);
        Self::from_i64(p, num, prec + 64).div(&d).map(|x| x.with_prec(prec))
    }

    /// The integer `x` with no precision bound; zero becomes exact zero.
    ///
    /// The mantissa is stored modulo `p^(v + rel)`, so `rel` caps how
    /// much relative precision the exact value can ever supply.
    pub fn exact_int(p: u32, x: i64, rel: i64) -> Self {
        if x == 0 {
            return Self::exact_zero(p);
        }
        let (v, _) = split_p(p, &BigUint::from(x.unsigned_abs()));
        Self::from_i64(p, x, v + rel)
    }

    pub fn one(p: u32, prec: i64) -> Self {
        Self::from_i64(p, 1, prec)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.state, State::Exact)
    }

    /// Zero at its own precision (including exact zero).
    pub fn is_zero(&self) -> bool {
        !matches!(self.state, State::Value { .. })
    }

    /// Absolute precision; `None` for exact zero.
    pub fn prec(&self) -> Option<i64> {
        match self.state {
            State::Exact => None,
            State::ZeroAt(k) => Some(k),
            State::Value { prec, .. } => Some(prec),
        }
    }

    /// Precision, with exact zero reported as `i64::MAX`.
    pub fn prec_or_max(&self) -> i64 {
        self.prec().unwrap_or(i64::MAX)
    }

    /// Valuation of a nonzero value.
    pub fn valuation(&self) -> Option<i64> {
        match self.state {
            State::Value { val, .. } => Some(val),
            _ => None,
        }
    }

    /// Valuation, or the precision for zeros (`i64::MAX` for exact zero).
    pub fn valuation_floor(&self) -> i64 {
        match self.state {
            State::Exact => i64::MAX,
            State::ZeroAt(k) => k,
            State::Value { val, .. } => val,
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.state {
            State::Value { unit, .. } => Some(unit),
            _ => None,
        }
    }

    /// Lowers the precision to at most `prec`.
    pub fn with_prec(&self, prec: i64) -> Self {
        match &self.state {
            State::Exact => self.clone(),
            State::ZeroAt(k) => Self::zero_at(self.p, min(*k, prec)),
            State::Value { val, unit, prec: q } => {
                if prec >= *q {
                    return self.clone();
                }
                if prec <= *val {
                    return Self::zero_at(self.p, prec);
                }
                let u = unit % ppow(self.p, prec - val);
                PadicNumber { p: self.p, state: State::Value { val: *val, unit: u, prec } }
            }
        }
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        match &self.state {
            State::Exact => self.clone(),
            State::ZeroAt(q) => Self::zero_at(self.p, q + k),
            State::Value { val, unit, prec } => PadicNumber {
                p: self.p,
                state: State::Value { val: val + k, unit: unit.clone(), prec: prec + k },
            },
        }
    }

    pub fn neg(&self) -> Self {
        match &self.state {
            State::Value { val, unit, prec } => {
                let m = ppow(self.p, prec - val);
                PadicNumber {
                    p: self.p,
                    state: State::Value { val: *val, unit: &m - unit, prec: *prec },
                }
            }
            _ => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        match (&self.state, &other.state) {
            (State::Exact, _) => other.clone(),
            (_, State::Exact) => self.clone(),
            (State::ZeroAt(a), State::ZeroAt(b)) => Self::zero_at(p, min(*a, *b)),
            (State::ZeroAt(a), _) => other.with_prec(*a),
            (_, State::ZeroAt(b)) => self.with_prec(*b),
            (
                State::Value { val: va, unit: ua, prec: pa },
                State::Value { val: vb, unit: ub, prec: pb },
            ) => {
                let prec = min(*pa, *pb);
                let v = min(*va, *vb);
                if prec <= v {
                    return Self::zero_at(p, prec);
                }
                let mut r = ua * ppow(p, va - v) + ub * ppow(p, vb - v);
                r %= ppow(p, prec - v);
                Self::normalize(p, v, r, prec)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        match (&self.state, &other.state) {
            (State::Exact, _) | (_, State::Exact) => Self::exact_zero(p),
            (State::ZeroAt(a), State::ZeroAt(b)) => Self::zero_at(p, a + b),
            (State::ZeroAt(a), State::Value { val, .. })
            | (State::Value { val, .. }, State::ZeroAt(a)) => Self::zero_at(p, a + val),
            (
                State::Value { val: va, unit: ua, prec: pa },
                State::Value { val: vb, unit: ub, prec: pb },
            ) => {
                let val = va + vb;
                let prec = min(va + pb, vb + pa);
                let u = (ua * ub) % ppow(p, prec - val);
                PadicNumber { p, state: State::Value { val, unit: u, prec } }
            }
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        if k == 0 {
            return Self::exact_zero(self.p);
        }
        self.mul(&Self::exact_int(self.p, k, self.relative_span()))
    }

    fn relative_span(&self) -> i64 {
        match &self.state {
            State::Value { val, prec, .. } => prec - val,
            _ => 1,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.state {
            State::Value { val, unit, prec } => {
                let rel = prec - val;
                let m = ppow(self.p, rel);
                let u = unit.modinv(&m).expect("unit mantissa is invertible");
                Ok(PadicNumber { p: self.p, state: State::Value { val: -val, unit: u, prec: rel - val } })
            }
            _ => Err(Error::DivisionByZeroAtPrecision),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let vb = other.valuation().ok_or(Error::DivisionByZeroAtPrecision)?;
        match &self.state {
            State::Exact => Ok(self.clone()),
            State::ZeroAt(a) => Ok(Self::zero_at(self.p, a - vb)),
            State::Value { .. } => Ok(self.mul(&other.inv()?)),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let p = self.p;
        let mut base = self.clone();
        let mut acc = Self::exact_int(p, 1, self.relative_span().max(1));
        if e == 0 {
            return acc;
        }
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True when `self - other` vanishes modulo `p^k`.
    pub fn eq_mod(&self, other: &Self, k: i64) -> bool {
        let d = self.sub(other);
        match d.state {
            State::Exact => true,
            State::ZeroAt(_) => true,
            State::Value { val, .. } => val >= k,
        }
    }

    /// True when both agree up to the smaller of their precisions.
    pub fn agrees(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// The integer `x` in `[0, p^k)` congruent to `self` modulo `p^k`.
    /// Requires nonnegative valuation and precision at least `k`.
    pub fn residue(&self, k: i64) -> Option<BigUint> {
        match &self.state {
            State::Exact => Some(BigUint::zero()),
            State::ZeroAt(q) => (*q >= k).then(BigUint::zero),
            State::Value { val, unit, prec } => {
                if *val < 0 || *prec < k {
                    return None;
                }
                if *val >= k {
                    return Some(BigUint::zero());
                }
                Some((unit * ppow(self.p, *val)) % ppow(self.p, k))
            }
        }
    }

    /// Signed representative of the residue modulo `p^k`, in `(-p^k/2, p^k/2]`.
    pub fn signed_residue(&self, k: i64) -> Option<BigInt> {
        let r = BigInt::from(self.residue(k)?);
        let m = BigInt::from(ppow(self.p, k));
        if &r * 2 > m {
            Some(r - m)
        } else {
            Some(r)
        }
    }

    /// Value as a small signed integer when it is one modulo its precision.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_exact_zero() {
            return Some(0);
        }
        let k = self.prec()?;
        self.signed_residue(k)?.to_i64()
    }

    /// `(valuation, mantissa, precision)` for serialization; zero values
    /// report `None` for the valuation and an empty mantissa.
    pub fn parts(&self) -> (Option<i64>, BigUint, Option<i64>) {
        match &self.state {
            State::Exact => (None, BigUint::zero(), None),
            State::ZeroAt(k) => (None, BigUint::zero(), Some(*k)),
            State::Value { val, unit, prec } => (Some(*val), unit.clone(), Some(*prec)),
        }
    }

    /// Rebuilds a value from serialized parts.
    pub fn from_parts(p: u32, val: Option<i64>, mantissa: &BigUint, prec: Option<i64>) -> Result<Self> {
        match (val, prec) {
            (None, None) => Ok(Self::exact_zero(p)),
            (None, Some(k)) => Ok(Self::zero_at(p, k)),
            (Some(v), Some(k)) => {
                if mantissa.is_zero() || k <= v || (mantissa % p).is_zero() {
                    return Err(Error::InvalidParameters("mantissa must be a unit".to_string()));
                }
                if *mantissa >= ppow(p, k - v) {
                    return Err(Error::InvalidParameters("mantissa exceeds precision".to_string()));
                }
                Ok(PadicNumber { p, state: State::Value { val: v, unit: mantissa.clone(), prec: k } })
            }
            (Some(_), None) => Err(Error::InvalidParameters("nonzero value needs a precision".to_string())),
        }
    }

    /// Integer approximation `p^val * unit` as a signed rational numerator and
    /// the power of p in its denominator.
    pub fn to_scaled(&self) -> (BigInt, i64) {
        match &self.state {
            State::Value { val, unit, prec } => {
                let m = BigInt::from(ppow(self.p, prec - val));
                let mut u = BigInt::from(unit.clone());
                if &u * 2 > m {
                    u -= &m;
                }
                if *val >= 0 {
                    (u * BigInt::from(ppow(self.p, *val)), 0)
                } else {
                    (u, -val)
                }
            }
            _ => (BigInt::zero(), 0),
        }
    }

    pub fn max_prec(a: &Self, b: &Self) -> i64 {
        max(a.prec_or_max(), b.prec_or_max())
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.state {
            State::Exact => write!(f, "0"),
            State::ZeroAt(k) => write!(f, "O({}^{})", self.p, k),
            State::Value { val, prec, .. } => {
                let (n, d) = self.to_scaled();
                let _ = val;
                if d > 0 {
                    write!(f, "{}/{}^{} + O({}^{})", n, self.p, d, self.p, prec)
                } else {
                    write!(f, "{} + O({}^{})", n, self.p, prec)
                }
            }
        }
    }
}
