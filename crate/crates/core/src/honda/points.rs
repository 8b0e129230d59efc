use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{frobenius, teichmuller, trace, Embedding, ExtensionElement, Ring, RingDescriptor};

use super::tables::recurrence_tables;

/// Weights multiplying `u^phi^-(n+i+1)` in `lambda_(n,u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaWeight {
    /// `b_i p^ceil(i/2)`.
    Definition,
    /// `b_i`.
    Proof,
    /// `C_1 = p, C_2 = a_p p, C_(i+2) = a_p C_(i+1) - p C_i`.
    Recurrence,
}

/// How `u` enters the uniformizer sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PiForm {
    /// `sum_k x_k (zeta_(p^(n-k)) - 1) u`.
    Definition,
    /// `sum_(k<n) x_k (zeta_(p^(n-k)) - 1) u^phi^(k-n)`.
    Proof,
}

impl LambdaWeight {
    pub fn name(self) -> &'static str {
        match self {
            LambdaWeight::Definition => "definition",
            LambdaWeight::Proof => "proof",
            LambdaWeight::Recurrence => "recurrence",
        }
    }
}

impl PiForm {
    pub fn name(self) -> &'static str {
        match self {
            PiForm::Definition => "definition",
            PiForm::Proof => "proof",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Convention {
    pub weight: LambdaWeight,
    pub pi_form: PiForm,
}

impl Default for Convention {
    fn default() -> Self {
        Convention { weight: LambdaWeight::Recurrence, pi_form: PiForm::Proof }
    }
}

impl Convention {
    /// Every combination, the default first.
    pub fn all() -> Vec<Convention> {
        let mut out = alloc::vec![Convention::default()];
        for weight in [LambdaWeight::Definition, LambdaWeight::Proof, LambdaWeight::Recurrence] {
            for pi_form in [PiForm::Definition, PiForm::Proof] {
                let c = Convention { weight, pi_form };
                if c != Convention::default() {
                    out.push(c);
                }
            }
        }
        out
    }
}

/// Number of terms `i*` with `ceil(i*/2) >= prec`: the sum runs over `i < i*`.
pub fn lambda_truncation(prec: i64) -> usize {
    (2 * prec - 1).max(1) as usize
}

fn weights(p: u32, ap: i64, weight: LambdaWeight, count: usize) -> Vec<BigInt> {
    let tables = recurrence_tables(p, ap, count.max(2), 1, 1);
    let pb = BigInt::from(p);
    match weight {
        LambdaWeight::Proof => tables.b[..count].to_vec(),
        LambdaWeight::Definition => {
            (1..=count).map(|i| &tables.b[i - 1] * pb.pow(i.div_ceil(2) as u32)).collect()
        }
        LambdaWeight::Recurrence => {
            let a = BigInt::from(ap);
            let mut c = alloc::vec![pb.clone(), &a * &pb];
            while c.len() < count {
                let n = c.len();
                c.push(&a * &c[n - 1] - &pb * &c[n - 2]);
            }
            c.truncate(count);
            c
        }
    }
}

/// `u^phi^j` for `j` modulo the Frobenius order.
struct Twists(Vec<ExtensionElement>);

impl Twists {
    fn new(u: &ExtensionElement) -> Result<Self> {
        let order = u.ring().unram_rank();
        let mut out = Vec::with_capacity(order);
        out.push(u.clone());
        for i in 1..order {
            out.push(frobenius(&out[i - 1])?);
        }
        Ok(Twists(out))
    }

    fn get(&self, j: i64) -> &ExtensionElement {
        &self.0[j.rem_euclid(self.0.len() as i64) as usize]
    }
}

/// `lambda_(n,u) = sum_(i < i*) C_i u^phi^-(n+i+1)`.
pub fn lambda_nu(n: u32, u: &ExtensionElement, prec: i64, weight: LambdaWeight) -> Result<ExtensionElement> {
    let ring = u.ring();
    let count = lambda_truncation(prec) - 1;
    let w = weights(ring.p(), ring.ap(), weight, count.max(1));
    let tw = Twists::new(u)?;
    let mut acc = ExtensionElement::zero(ring);
    for (i, c) in w.iter().enumerate().take(count) {
        let t = tw.get(-(n as i64 + i as i64 + 2));
        acc = acc.add(&t.scale(&crate::padic::PadicNumber::from_bigint(ring.p(), c, ring.prec())));
    }
    Ok(acc.with_prec(prec))
}

fn level_ring(u: &Ring, n: u32, prec: i64) -> Result<Ring> {
    RingDescriptor::with_factors(u.p(), u.ap(), false, n, u.unram_level(), prec)
}

/// The logarithm of the level-`n` point attached to `u`, in
/// `cyc(n) x unram(m)` at precision `prec`.
pub fn point_log(n: u32, u: &ExtensionElement, prec: i64, convention: Convention) -> Result<ExtensionElement> {
    let base = u.ring();
    if base.cyc_level() != 0 || base.has_quad() {
        return Err(Error::UnsupportedRing("u must lie in an unramified ring"));
    }
    let p = base.p();
    let working = prec + n as i64 / 2 + 2;
    let ring = level_ring(base, n, working)?;
    let emb = Embedding::new(base, &ring)?;
    let lam = lambda_nu(n, u, working, convention.weight)?;
    let mut acc = emb.apply(&lam)?;
    if n > 0 {
        let x = recurrence_tables(p, base.ap(), 2, n as usize, working).x;
        let tw = Twists::new(u)?;
        let one = ExtensionElement::one(&ring);
        for (k, xk) in x.iter().enumerate().take(n as usize) {
            let j = n - k as u32;
            let pi = ExtensionElement::zeta_pow(&ring, (p as i64).pow(n - j))?.sub(&one);
            let unit = match convention.pi_form {
                PiForm::Definition => u,
                PiForm::Proof => tw.get(k as i64 - n as i64),
            };
            acc = acc.add(&pi.mul(&emb.apply(unit)?).scale(xk));
        }
    }
    if acc.prec() < prec {
        return Err(Error::PrecisionExhausted(format!("point logarithm known to {} of {} digits", acc.prec(), prec)));
    }
    acc.with_prec(prec).recast(&level_ring(base, n, prec)?)
}

/// Point logarithms for levels `0..=n_max`.
#[derive(Clone, Debug)]
pub struct PointLogTable {
    pub convention: Convention,
    pub prec: i64,
    pub entries: Vec<ExtensionElement>,
}

pub fn point_log_table(n_max: u32, u: &ExtensionElement, prec: i64, convention: Convention) -> Result<PointLogTable> {
    let entries = (0..=n_max).map(|n| point_log(n, u, prec, convention)).collect::<Result<_>>()?;
    Ok(PointLogTable { convention, prec, entries })
}

/// Trace-compatible units `d_0, ..., d_(m_max)`, each in `unram(m)`.
#[derive(Clone, Debug)]
pub struct DSystem {
    /// Residue coordinates of the Teichmuller generator at the top level.
    pub generator: Vec<u64>,
    pub d: Vec<ExtensionElement>,
}

/// `d_(m_max)` is the Teichmuller lift of the first residue, in base-p
/// order from the generator `w`, whose traces down the tower are all units.
pub fn d_system(p: u32, ap: i64, m_max: u32, prec: i64) -> Result<DSystem> {
    let ring = |m: u32| RingDescriptor::with_factors(p, ap, false, 0, m, prec);
    if m_max == 0 {
        return Ok(DSystem { generator: alloc::vec![1], d: alloc::vec![ExtensionElement::one(&ring(0)?)] });
    }
    let top = ring(m_max)?;
    let width = top.unram_rank();
    let count = (p as u128).checked_pow(width as u32).ok_or_else(|| Error::InvalidParameters("tower too tall".into()))?;
    let mut r = p as u128;
    for _ in 1..count {
        let mut digits = Vec::with_capacity(width);
        let mut t = r;
        for _ in 0..width {
            digits.push((t % p as u128) as u64);
            t /= p as u128;
        }
        let mut d = alloc::vec![teichmuller(&top, &digits)?];
        for m in (0..m_max).rev() {
            let next = trace(d.last().expect("nonempty"), &ring(m)?)?;
            d.push(next);
        }
        if d.iter().all(|x| x.coord_valuation() == 0) {
            d.reverse();
            return Ok(DSystem { generator: digits, d });
        }
        r = if r + 1 == count { 1 } else { r + 1 };
    }
    Err(Error::NotDecomposable("no trace-compatible unit system".into()))
}

/// Which trace relation a case checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `tr_(n -> n-1) c_n = a_p c_(n-1) - c_(n-2)`.
    Cyclotomic,
    /// `tr_(m+1 -> m) c_(n,m+1) = c_(n,m)`.
    Unramified,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Cyclotomic => "cyclotomic",
            Relation::Unramified => "unramified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCase {
    pub n: u32,
    pub m: u32,
    pub relation: Relation,
    pub pass: bool,
    /// Least coordinate valuation of the discrepancy, its precision when it
    /// vanishes.
    pub discrepancy_valuation: i64,
}

#[derive(Debug, Clone)]
pub struct ConventionReport {
    pub convention: Convention,
    pub cases: Vec<TraceCase>,
}

impl ConventionReport {
    pub fn passes(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub prec: i64,
    pub generator: Vec<u64>,
    pub reports: Vec<ConventionReport>,
}

impl TraceReport {
    /// The first convention, in [`Convention::all`] order, passing every case.
    pub fn selected(&self) -> Option<&ConventionReport> {
        self.reports.iter().find(|r| r.passes())
    }
}

fn discrepancy(lhs: &ExtensionElement, rhs: &ExtensionElement, prec: i64) -> (bool, i64) {
    let d = lhs.sub(rhs);
    let v = if d.is_zero() { d.prec() } else { d.coord_valuation() };
    (v >= prec, v.min(d.prec()))
}

/// Checks both trace relations for every convention, levels
/// `2 <= n <= n_max` (cyclotomic), `1 <= n <= n_max` (unramified) and
/// `0 <= m <= m_max`.
pub fn verify_traces(p: u32, ap: i64, n_max: u32, m_max: u32, prec: i64) -> Result<TraceReport> {
    if n_max < 2 {
        return Err(Error::InvalidParameters("n_max must be at least 2".into()));
    }
    let ds = d_system(p, ap, m_max, prec + 6)?;
    let mut reports = Vec::new();
    for convention in Convention::all() {
        // logs[m][n], two guard digits for the traces
        let logs: Vec<Vec<ExtensionElement>> = ds
            .d
            .iter()
            .map(|d| point_log_table(n_max, d, prec + 2, convention).map(|t| t.entries))
            .collect::<Result<_>>()?;
        let mut cases = Vec::new();
        for (m, row) in logs.iter().enumerate() {
            for n in 2..=n_max as usize {
                let below = row[n - 1].ring().clone();
                let lhs = trace(&row[n], &below)?;
                let lower = Embedding::new(row[n - 2].ring(), &below)?.apply(&row[n - 2])?;
                let rhs = row[n - 1].scale_i64(ap).sub(&lower);
                let (pass, v) = discrepancy(&lhs, &rhs, prec);
                cases.push(TraceCase { n: n as u32, m: m as u32, relation: Relation::Cyclotomic, pass, discrepancy_valuation: v });
            }
        }
        for m in 0..m_max as usize {
            for n in 1..=n_max as usize {
                let lhs = trace(&logs[m + 1][n], logs[m][n].ring())?;
                let (pass, v) = discrepancy(&lhs, &logs[m][n], prec);
                cases.push(TraceCase { n: n as u32, m: m as u32, relation: Relation::Unramified, pass, discrepancy_valuation: v });
            }
        }
        reports.push(ConventionReport { convention, cases });
    }
    Ok(TraceReport { prec, generator: ds.generator, reports })
}
