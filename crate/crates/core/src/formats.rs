//! JSON encodings of fields, maps and decomposition results.
//!
//! Terms are written in lexicographic `(m, n)` order with shortest round-trip float
//! formatting, so writing then reading reproduces every coefficient bit for bit.
//! Readers reject duplicate or out-of-order indices.

use serde::{Deserialize, Serialize};

use crate::disk_calculus::DecompositionResult;
use crate::domains::annulus::LaurentField;
use crate::domains::conformal_map::ConformalMap;
use crate::domains::torus::TorusField;
use crate::error::{Error, Result};
use crate::series::{BivariateField, HolomorphicSeries, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub m: i64,
    pub n: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub max_degree: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentJson {
    pub band_limit: i32,
    pub r_in: f64,
    pub terms: Vec<TermJson>,
}

/// Torus fields store the two angle components separately; `m`, `n` are the
/// Fourier indices of `e^{i(mθ + nφ)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusJson {
    pub band_limit: i32,
    pub theta: Vec<TermJson>,
    pub phi: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapJson {
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    pub min_deriv: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub kind: String,
    pub conformal: FieldJson,
    #[serde(rename = "F")]
    pub f: FieldJson,
    #[serde(rename = "G")]
    pub g: FieldJson,
    pub residual_norm: f64,
    pub orthogonality: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closedness_defect: Option<f64>,
}

fn term(m: i64, n: i64, c: C64) -> TermJson {
    TermJson { m, n, re: c.re, im: c.im }
}

fn checked_terms(terms: &[TermJson]) -> Result<Vec<((i64, i64), C64)>> {
    let mut out = Vec::with_capacity(terms.len());
    let mut last: Option<(i64, i64)> = None;
    for t in terms {
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::Format(format!("non-finite coefficient at ({}, {})", t.m, t.n)));
        }
        let idx = (t.m, t.n);
        if let Some(prev) = last {
            if prev == idx {
                return Err(Error::DuplicateTerm { m: t.m, n: t.n });
            }
            if prev > idx {
                return Err(Error::UnorderedTerms { m: t.m, n: t.n });
            }
        }
        last = Some(idx);
        out.push((idx, C64::new(t.re, t.im)));
    }
    Ok(out)
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

impl From<&BivariateField> for FieldJson {
    fn from(f: &BivariateField) -> Self {
        FieldJson {
            max_degree: f.max_degree(),
            terms: f.terms().map(|((m, n), c)| term(m as i64, n as i64, c)).collect(),
        }
    }
}

impl TryFrom<&FieldJson> for BivariateField {
    type Error = Error;
    fn try_from(j: &FieldJson) -> Result<Self> {
        let terms = checked_terms(&j.terms)?;
        let mut conv = Vec::with_capacity(terms.len());
        for ((m, n), c) in terms {
            if m < 0 || n < 0 {
                return Err(Error::IndexOutOfRange {
                    m,
                    n,
                    max_degree: j.max_degree as i64,
                });
            }
            conv.push(((m as u32, n as u32), c));
        }
        BivariateField::from_terms(j.max_degree, conv)
    }
}

pub fn field_to_json(f: &BivariateField) -> String {
    to_pretty(&FieldJson::from(f))
}

pub fn field_from_json(s: &str) -> Result<BivariateField> {
    let j: FieldJson = serde_json::from_str(s)?;
    BivariateField::try_from(&j)
}

/// Writes a series as a field whose terms all have `n = 0`; `max_degree` is the budget.
pub fn holomorphic_to_json(h: &HolomorphicSeries) -> String {
    let f = h.to_field().with_max_degree_at_least(h.budget() as u32);
    field_to_json(&f)
}

pub fn laurent_to_json(f: &LaurentField) -> String {
    to_pretty(&LaurentJson {
        band_limit: f.band(),
        r_in: f.r_in(),
        terms: f.terms().map(|((m, n), c)| term(m as i64, n as i64, c)).collect(),
    })
}

pub fn laurent_from_json(s: &str) -> Result<LaurentField> {
    let j: LaurentJson = serde_json::from_str(s)?;
    let terms = checked_terms(&j.terms)?;
    let conv = terms
        .into_iter()
        .map(|((m, n), c)| Ok(((narrow(m)?, narrow(n)?), c)))
        .collect::<Result<Vec<_>>>()?;
    LaurentField::from_terms(j.band_limit, j.r_in, conv)
}

fn narrow(k: i64) -> Result<i32> {
    i32::try_from(k).map_err(|_| Error::Format(format!("index {k} out of range")))
}

pub fn torus_to_json(f: &TorusField) -> String {
    let (theta, phi) = f.terms();
    let conv = |v: Vec<((i32, i32), C64)>| v.into_iter().map(|((j, k), c)| term(j as i64, k as i64, c)).collect();
    to_pretty(&TorusJson {
        band_limit: f.band(),
        theta: conv(theta),
        phi: conv(phi),
    })
}

pub fn torus_from_json(s: &str) -> Result<TorusField> {
    let j: TorusJson = serde_json::from_str(s)?;
    let conv = |t: &[TermJson]| -> Result<Vec<((i32, i32), C64)>> {
        checked_terms(t)?
            .into_iter()
            .map(|((m, n), c)| Ok(((narrow(m)?, narrow(n)?), c)))
            .collect()
    };
    TorusField::from_coefficients(j.band_limit, &conv(&j.theta)?, &conv(&j.phi)?)
}

pub fn map_to_json(map: &ConformalMap) -> String {
    to_pretty(&MapJson {
        coeffs: map.phi().coeffs().iter().map(|c| [c.re, c.im]).collect(),
        min_deriv: Some(map.min_deriv()),
    })
}

/// Parses and validates a map; a stored `min_deriv` is informational and recomputed.
pub fn map_from_json(s: &str) -> Result<ConformalMap> {
    let j: MapJson = serde_json::from_str(s)?;
    if j.coeffs.is_empty() {
        return Err(Error::Format("map needs at least one coefficient".into()));
    }
    if j.coeffs.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Format("non-finite map coefficient".into()));
    }
    ConformalMap::new(HolomorphicSeries::new(
        j.coeffs.iter().map(|c| C64::new(c[0], c[1])).collect(),
    ))
}

pub fn decomposition_to_json(d: &DecompositionResult) -> String {
    to_pretty(&DecompositionJson {
        kind: d.kind.as_str().to_string(),
        conformal: FieldJson::from(&d.principal),
        f: FieldJson::from(&d.multipliers.f),
        g: FieldJson::from(&d.multipliers.g),
        residual_norm: d.residual_norm,
        orthogonality: d.orthogonality.clone(),
        closedness_defect: d.closedness_defect,
    })
}
