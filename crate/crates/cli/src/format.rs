//! JSON file formats. Scalars are decimal strings; nothing is a float.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use sharpflat_core::decompose::{FourMatrix, LPair, Provenance};
use sharpflat_core::padic::{ExtensionElement, PadicNumber, Ring, RingDescriptor};
use sharpflat_core::series::{GroupRingElement, Mat2, TruncSeries1, TruncSeries2};

use crate::error::{CliError, CliResult};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    /// Valuation as `"a/b"`, `null` for zero.
    pub val: Option<String>,
    pub mantissa: String,
    /// Absolute precision, `null` for an exact zero.
    pub prec: Option<i64>,
}

impl Scalar {
    pub fn of(x: &PadicNumber) -> Self {
        let (val, mantissa, prec) = x.parts();
        Scalar { val: val.map(|v| format!("{v}/1")), mantissa: mantissa.to_string(), prec }
    }

    pub fn to_padic(&self, p: u32) -> CliResult<PadicNumber> {
        let val = match &self.val {
            None => None,
            Some(s) => Some(parse_integer_valuation(s)?),
        };
        let mantissa: BigUint = if self.mantissa.is_empty() {
            BigUint::from(0u32)
        } else {
            self.mantissa.parse().map_err(|_| CliError::malformed(format!("mantissa {:?}", self.mantissa)))?
        };
        PadicNumber::from_parts(p, val, &mantissa, self.prec).map_err(|e| CliError::malformed(e.to_string()))
    }
}

fn parse_integer_valuation(s: &str) -> CliResult<i64> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i64 = num.trim().parse().map_err(|_| CliError::malformed(format!("valuation {s:?}")))?;
    let den: i64 = den.trim().parse().map_err(|_| CliError::malformed(format!("valuation {s:?}")))?;
    if den == 0 || num % den != 0 {
        return Err(CliError::malformed(format!("coordinate valuation {s:?} is not an integer")));
    }
    Ok(num / den)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RingJson {
    pub p: u32,
    pub ap: i64,
    pub kind: String,
    /// Cyclotomic level.
    pub n: u32,
    /// Unramified level.
    pub m: u32,
    #[serde(rename = "N")]
    pub prec: i64,
}

impl RingJson {
    pub fn of(r: &Ring) -> Self {
        let mut parts = Vec::new();
        if r.has_quad() {
            parts.push("quad");
        }
        if r.cyc_level() > 0 {
            parts.push("cyc");
        }
        if r.unram_level() > 0 {
            parts.push("unram");
        }
        let kind = if parts.is_empty() { "base".to_string() } else { parts.join("-") };
        RingJson { p: r.p(), ap: r.ap(), kind, n: r.cyc_level(), m: r.unram_level(), prec: r.prec() }
    }

    pub fn to_ring(&self) -> CliResult<Ring> {
        let flags: Vec<&str> = if self.kind == "base" { Vec::new() } else { self.kind.split('-').collect() };
        if flags.iter().any(|f| !["quad", "cyc", "unram"].contains(f)) {
            return Err(CliError::malformed(format!("ring kind {:?}", self.kind)));
        }
        let quad = flags.contains(&"quad");
        let cyc = if flags.contains(&"cyc") { self.n } else { 0 };
        let unram = if flags.contains(&"unram") { self.m } else { 0 };
        if (cyc == 0) == flags.contains(&"cyc") || (unram == 0) == flags.contains(&"unram") {
            return Err(CliError::malformed(format!("ring kind {:?} disagrees with levels n = {}, m = {}", self.kind, self.n, self.m)));
        }
        RingDescriptor::with_factors(self.p, self.ap, quad, cyc, unram, self.prec)
            .map_err(|e| CliError::malformed(e.to_string()))
    }
}

/// One coordinate on input: a full scalar, or an integer as a decimal
/// string or JSON number, read at the ring's precision.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum Coord {
    Scalar(Scalar),
    Text(String),
    Int(i64),
}

impl Coord {
    pub fn to_padic(&self, p: u32, prec: i64) -> CliResult<PadicNumber> {
        let int = |s: &str| -> CliResult<PadicNumber> {
            let x: BigInt = s.trim().parse().map_err(|_| CliError::malformed(format!("integer {s:?}")))?;
            Ok(PadicNumber::from_bigint(p, &x, prec))
        };
        match self {
            Coord::Scalar(s) => Ok(s.to_padic(p)?.with_prec(prec)),
            Coord::Text(s) => int(s),
            Coord::Int(k) => Ok(PadicNumber::from_i64(p, *k, prec)),
        }
    }
}

/// An element as its coordinate list; a bare coordinate is accepted for
/// rank-one rings.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElementJson {
    Coords(Vec<Coord>),
    Single(Coord),
}

pub fn element_json(x: &ExtensionElement) -> ElementJson {
    ElementJson::Coords(x.coords().iter().map(|c| Coord::Scalar(Scalar::of(c))).collect())
}

pub fn element_from(ring: &Ring, e: &ElementJson) -> CliResult<ExtensionElement> {
    let coords = match e {
        ElementJson::Coords(c) => c.as_slice(),
        ElementJson::Single(c) => core::slice::from_ref(c),
    };
    if coords.len() != ring.rank() {
        return Err(CliError::malformed(format!("element has {} coordinates, ring rank {}", coords.len(), ring.rank())));
    }
    let xs = coords.iter().map(|c| c.to_padic(ring.p(), ring.prec())).collect::<CliResult<Vec<_>>>()?;
    ExtensionElement::from_coords(ring, xs).map_err(|e| CliError::malformed(e.to_string()))
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SeriesJson {
    pub ring: RingJson,
    pub vars: Vec<String>,
    pub caps: Vec<usize>,
    /// Coordinate arrays, row-major in `(X, Y)` for two variables.
    pub coeffs: Vec<ElementJson>,
}

impl SeriesJson {
    pub fn of1(s: &TruncSeries1) -> Self {
        SeriesJson {
            ring: RingJson::of(s.ring()),
            vars: vec![s.variable().name().to_string()],
            caps: vec![s.cap()],
            coeffs: s.coeffs().iter().map(element_json).collect(),
        }
    }

    pub fn of2(s: &TruncSeries2) -> Self {
        let (mx, my) = s.caps();
        SeriesJson {
            ring: RingJson::of(s.ring()),
            vars: vec!["X".into(), "Y".into()],
            caps: vec![mx, my],
            coeffs: s.coeffs().iter().map(element_json).collect(),
        }
    }

    fn elements(&self, ring: &Ring, count: usize) -> CliResult<Vec<ExtensionElement>> {
        if self.coeffs.len() != count {
            return Err(CliError::malformed(format!("{} coefficients for caps {:?}", self.coeffs.len(), self.caps)));
        }
        self.coeffs.iter().map(|c| element_from(ring, c)).collect()
    }

    pub fn to1(&self) -> CliResult<TruncSeries1> {
        if self.vars.len() != 1 || self.caps.len() != 1 {
            return Err(CliError::malformed("expected a one-variable series"));
        }
        let ring = self.ring.to_ring()?;
        let coeffs = self.elements(&ring, self.caps[0])?;
        Ok(TruncSeries1::from_coeffs(&ring, coeffs)?)
    }

    pub fn to2(&self) -> CliResult<TruncSeries2> {
        if self.vars.len() != 2 || self.caps.len() != 2 {
            return Err(CliError::malformed("expected a two-variable series"));
        }
        let ring = self.ring.to_ring()?;
        let caps = (self.caps[0], self.caps[1]);
        let coeffs = self.elements(&ring, caps.0 * caps.1)?;
        Ok(TruncSeries2::from_coeffs(&ring, caps, coeffs)?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GroupRingJson {
    pub ring: RingJson,
    pub level: u32,
    pub basis: String,
    pub coeffs: Vec<ElementJson>,
}

pub const GROUP_BASIS: &str = "one-plus-X-powers";

impl GroupRingJson {
    pub fn of(g: &GroupRingElement) -> Self {
        GroupRingJson {
            ring: RingJson::of(g.ring()),
            level: g.level(),
            basis: GROUP_BASIS.into(),
            coeffs: g.coeffs().iter().map(element_json).collect(),
        }
    }

    pub fn to_element(&self) -> CliResult<GroupRingElement> {
        if self.basis != GROUP_BASIS {
            return Err(CliError::malformed(format!("basis {:?}", self.basis)));
        }
        let ring = self.ring.to_ring()?;
        let coeffs = self.coeffs.iter().map(|c| element_from(&ring, c)).collect::<CliResult<Vec<_>>>()?;
        GroupRingElement::from_coeffs(&ring, self.level, coeffs).map_err(|e| CliError::malformed(e.to_string()))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CertificateJson {
    #[serde(rename = "minValuation")]
    pub min_valuation: i64,
    #[serde(rename = "maxDenominator")]
    pub max_denominator: i64,
    pub prec: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PairJson {
    pub sharp: SeriesJson,
    pub flat: SeriesJson,
    pub provenance: String,
    pub certificate: CertificateJson,
}

impl PairJson {
    pub fn of(pair: &LPair) -> Self {
        let c = pair.certificate;
        PairJson {
            sharp: SeriesJson::of1(&pair.sharp),
            flat: SeriesJson::of1(&pair.flat),
            provenance: pair.provenance.name().into(),
            certificate: CertificateJson { min_valuation: c.min_valuation, max_denominator: c.max_denominator, prec: c.prec },
        }
    }

    pub fn to_pair(&self) -> CliResult<LPair> {
        let provenance = match self.provenance.as_str() {
            "synthetic" => Provenance::Synthetic,
            "ingested" => Provenance::Ingested,
            other => return Err(CliError::malformed(format!("provenance {other:?}"))),
        };
        Ok(LPair::new(self.sharp.to1()?, self.flat.to1()?, provenance)?)
    }
}

/// `(L_alpha, L_beta)` over the quadratic ring.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LFunctionsJson {
    pub lalpha: SeriesJson,
    pub lbeta: SeriesJson,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FourJson {
    /// `"alpha-beta"` or `"integral"`.
    pub variant: String,
    /// Row-major 2x2.
    pub entries: Vec<Vec<SeriesJson>>,
}

impl FourJson {
    pub fn of(m: &FourMatrix, variant: &str) -> Self {
        let row = |i| vec![SeriesJson::of2(m.get(i, 0)), SeriesJson::of2(m.get(i, 1))];
        FourJson { variant: variant.into(), entries: vec![row(0), row(1)] }
    }

    pub fn to_matrix(&self) -> CliResult<FourMatrix> {
        if self.entries.len() != 2 || self.entries.iter().any(|r| r.len() != 2) {
            return Err(CliError::malformed("four-matrix must be 2x2"));
        }
        let e = |i: usize, j: usize| self.entries[i][j].to2();
        Ok(Mat2::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?))
    }
}

/// One level of a Mazur-Tate tower; coefficients are scalars or integers
/// given as decimal strings or JSON numbers.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LevelJson {
    pub n: u32,
    pub coeffs: Vec<Coord>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TowerJson {
    pub p: u32,
    pub ap: i64,
    pub levels: Vec<LevelJson>,
}

impl TowerJson {
    pub fn of(theta: &[GroupRingElement], p: u32, ap: i64) -> Self {
        let levels = theta
            .iter()
            .map(|t| LevelJson {
                n: t.level(),
                coeffs: t.coeffs().iter().map(|c| Coord::Scalar(Scalar::of(&c.coords()[0]))).collect(),
            })
            .collect();
        TowerJson { p, ap, levels }
    }

    /// The tower over `Z_p / p^prec`, levels `0..=n_max` in order.
    pub fn to_tower(&self, prec: i64) -> CliResult<Vec<GroupRingElement>> {
        let ring = RingDescriptor::new(self.p, self.ap, sharpflat_core::RingKind::Base, prec)
            .map_err(|e| CliError::malformed(e.to_string()))?;
        let mut levels = self.levels.clone();
        levels.sort_by_key(|l| l.n);
        if levels.is_empty() || levels.iter().enumerate().any(|(i, l)| l.n != i as u32) {
            return Err(CliError::malformed("levels must run 0, 1, ..., n_max"));
        }
        levels
            .iter()
            .map(|l| {
                let len = (self.p as usize).pow(l.n);
                if l.coeffs.len() != len {
                    return Err(CliError::malformed(format!("level {} has {} coefficients, expected {len}", l.n, l.coeffs.len())));
                }
                let coeffs = l
                    .coeffs
                    .iter()
                    .map(|v| v.to_padic(self.p, prec).map(|x| ExtensionElement::from_padic(&ring, &x)))
                    .collect::<CliResult<Vec<_>>>()?;
                GroupRingElement::from_coeffs(&ring, l.n, coeffs).map_err(|e| CliError::malformed(e.to_string()))
            })
            .collect()
    }
}
