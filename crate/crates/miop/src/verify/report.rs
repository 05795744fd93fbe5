//! Case records, fingerprints, residual witnesses and report serialization.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{MiopError, Result};
use crate::eta::EtaPoly;
use crate::lattice::{LatticeFun, LatticeRat};
use crate::scalar::{format_gauss, GaussScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// First position where the two sides differ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub position: String,
    pub lhs: String,
    pub rhs: String,
}

/// Optional structured coordinates of a case, flattened into CSV.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CaseMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub status: Status,
    #[serde(flatten)]
    pub meta: CaseMeta,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Observations are reported but never count as failures.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub observation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_us: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub observations_failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub summary: Summary,
    pub records: Vec<CaseRecord>,
}

/// A side of a checked relation.
#[derive(Clone, Debug)]
pub enum Value {
    Fun(LatticeFun),
    Rat(LatticeRat),
    Eta(EtaPoly),
    Scalar(GaussScalar),
    /// Values at labelled points.
    Points(Vec<(String, GaussScalar)>),
    Int(i64),
}

pub struct Comparison {
    pub equal: bool,
    pub lhs: String,
    pub rhs: String,
    pub residual: Option<Residual>,
}

/// What a case body produces.
pub enum Outcome {
    Compare(Value, Value),
    Skip(String),
}

fn fingerprint(s: &str) -> String {
    let h = Sha256::digest(s.as_bytes());
    h.iter().take(8).fold(String::new(), |mut acc, b| {
        let _ = write!(acc, "{b:02x}");
        acc
    })
}

fn canon_fun(f: &LatticeFun) -> String {
    let mut s = format!("{:?};", f.model.kind());
    for (k, c) in f.poly.terms() {
        let _ = write!(s, "{k}:{};", format_gauss(c));
    }
    s
}

fn canon_eta(e: &EtaPoly) -> String {
    let mut s = "eta;".to_string();
    for (k, c) in e.coeffs().iter().enumerate() {
        let _ = write!(s, "{k}:{};", format_gauss(c));
    }
    s
}

fn laurent_residual(a: &LatticeFun, b: &LatticeFun) -> Option<Residual> {
    let lo = [a.poly.lo(), b.poly.lo()].into_iter().flatten().min()?;
    let hi = [a.poly.hi(), b.poly.hi()].into_iter().flatten().max()?;
    (lo..=hi).find_map(|k| {
        let (x, y) = (a.poly.coeff(k), b.poly.coeff(k));
        (x != y).then(|| Residual { position: format!("exponent {k}"), lhs: format_gauss(&x), rhs: format_gauss(&y) })
    })
}

fn cleared(a: &Value, b: &Value) -> Option<(LatticeFun, LatticeFun)> {
    let as_rat = |v: &Value| match v {
        Value::Fun(f) => Some(LatticeRat::from_fun(f.clone())),
        Value::Rat(r) => Some(r.clone()),
        _ => None,
    };
    let (x, y) = (as_rat(a)?, as_rat(b)?);
    Some((&x.num * &y.den, &y.num * &x.den))
}

/// Exact comparison with fingerprints and a first-difference witness.
pub fn compare(a: &Value, b: &Value) -> Comparison {
    let text = |x: &GaussScalar| format_gauss(x);
    match (a, b) {
        (Value::Fun(x), Value::Fun(y)) => {
            let residual = laurent_residual(x, y);
            Comparison { equal: residual.is_none(), lhs: fingerprint(&canon_fun(x)), rhs: fingerprint(&canon_fun(y)), residual }
        }
        (Value::Rat(_), _) | (_, Value::Rat(_)) if cleared(a, b).is_some() => {
            let (x, y) = cleared(a, b).unwrap();
            let mut c = compare(&Value::Fun(x), &Value::Fun(y));
            if let Some(r) = c.residual.as_mut() {
                r.position = format!("cross-multiplied {}", r.position);
            }
            c
        }
        (Value::Eta(x), Value::Eta(y)) => {
            let n = x.coeffs().len().max(y.coeffs().len());
            let get = |e: &EtaPoly, k: usize| e.coeffs().get(k).cloned().unwrap_or_else(GaussScalar::zero);
            let residual = (0..n).find_map(|k| {
                let (p, q) = (get(x, k), get(y, k));
                (p != q).then(|| Residual { position: format!("eta^{k}"), lhs: text(&p), rhs: text(&q) })
            });
            Comparison { equal: residual.is_none(), lhs: fingerprint(&canon_eta(x)), rhs: fingerprint(&canon_eta(y)), residual }
        }
        (Value::Scalar(x), Value::Scalar(y)) => {
            let residual = (x != y).then(|| Residual { position: "value".into(), lhs: text(x), rhs: text(y) });
            Comparison { equal: x == y, lhs: fingerprint(&text(x)), rhs: fingerprint(&text(y)), residual }
        }
        (Value::Points(x), Value::Points(y)) => {
            let ser = |v: &Vec<(String, GaussScalar)>| v.iter().map(|(p, s)| format!("{p}:{};", text(s))).collect::<String>();
            let residual = if x.len() != y.len() {
                Some(Residual { position: "point count".into(), lhs: x.len().to_string(), rhs: y.len().to_string() })
            } else {
                x.iter().zip(y).find_map(|((p, s), (_, t))| {
                    (s != t).then(|| Residual { position: p.clone(), lhs: text(s), rhs: text(t) })
                })
            };
            Comparison { equal: residual.is_none(), lhs: fingerprint(&ser(x)), rhs: fingerprint(&ser(y)), residual }
        }
        (Value::Int(x), Value::Int(y)) => {
            let residual =
                (x != y).then(|| Residual { position: "value".into(), lhs: x.to_string(), rhs: y.to_string() });
            Comparison { equal: x == y, lhs: fingerprint(&x.to_string()), rhs: fingerprint(&y.to_string()), residual }
        }
        _ => Comparison {
            equal: false,
            lhs: String::new(),
            rhs: String::new(),
            residual: Some(Residual { position: "kind".into(), lhs: format!("{a:?}"), rhs: format!("{b:?}") }),
        },
    }
}

impl CaseRecord {
    /// Run a case body, timing it and turning errors into failures with a witness.
    pub fn run<F: FnOnce() -> Result<Outcome>>(id: String, meta: CaseMeta, body: F) -> CaseRecord {
        let start = Instant::now();
        let out = body();
        let wall_us = Some(start.elapsed().as_micros() as u64);
        let mut rec = CaseRecord {
            id,
            status: Status::Pass,
            meta,
            lhs: None,
            rhs: None,
            residual: None,
            note: None,
            observation: false,
            wall_us,
        };
        match out {
            Ok(Outcome::Compare(a, b)) => {
                let c = compare(&a, &b);
                rec.status = if c.equal { Status::Pass } else { Status::Fail };
                rec.lhs = Some(c.lhs);
                rec.rhs = Some(c.rhs);
                rec.residual = c.residual;
            }
            Ok(Outcome::Skip(why)) => {
                rec.status = Status::Skipped;
                rec.note = Some(why);
            }
            Err(e) => {
                rec.status = Status::Fail;
                rec.residual = Some(Residual { position: "error".into(), lhs: e.to_string(), rhs: String::new() });
            }
        }
        rec
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CaseRecord {
        self.note = Some(note.into());
        self
    }

    pub fn as_observation(mut self) -> CaseRecord {
        self.observation = true;
        self
    }
}

impl VerifyReport {
    pub fn new(suite: &str, records: Vec<CaseRecord>) -> VerifyReport {
        let mut s = Summary { total: records.len(), ..Summary::default() };
        for r in &records {
            match (r.status, r.observation) {
                (Status::Pass, _) => s.passed += 1,
                (Status::Skipped, _) => s.skipped += 1,
                (Status::Fail, false) => s.failed += 1,
                (Status::Fail, true) => s.observations_failed += 1,
            }
        }
        VerifyReport { suite: suite.to_string(), summary: s, records }
    }

    pub fn merge(suite: &str, parts: Vec<VerifyReport>) -> VerifyReport {
        VerifyReport::new(suite, parts.into_iter().flat_map(|p| p.records).collect())
    }

    /// Zero failures among non-skipped, non-observation cases.
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail && !r.observation)
    }

    /// JSON with timings removed unless requested, so equal inputs give equal bytes.
    pub fn to_json(&self, timing: bool) -> Result<String> {
        let mut r = self.clone();
        if !timing {
            for c in &mut r.records {
                c.wall_us = None;
            }
        }
        serde_json::to_string_pretty(&r).map_err(|e| MiopError::Config(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("id,family,D,n,method,degree,pass\n");
        let q = |x: &str| if x.contains([',', '"']) { format!("\"{}\"", x.replace('"', "\"\"")) } else { x.to_string() };
        for r in &self.records {
            let m = &r.meta;
            let pass = match r.status {
                Status::Pass => "true",
                Status::Fail => "false",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                q(&r.id),
                q(m.family.as_deref().unwrap_or("")),
                q(m.d.as_deref().unwrap_or("")),
                m.n.map(|x| x.to_string()).unwrap_or_default(),
                m.method.as_deref().unwrap_or(""),
                m.degree.map(|x| x.to_string()).unwrap_or_default(),
                pass
            );
        }
        s
    }

    pub fn to_pretty(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let tag = match (r.status, r.observation) {
                (Status::Pass, _) => "PASS",
                (Status::Skipped, _) => "SKIP",
                (Status::Fail, false) => "FAIL",
                (Status::Fail, true) => "NOTE",
            };
            let _ = write!(s, "{tag}  {}", r.id);
            if let Some(res) = &r.residual {
                let _ = write!(s, "  [{}: {} vs {}]", res.position, res.lhs, res.rhs);
            }
            if let Some(n) = &r.note {
                let _ = write!(s, "  ({n})");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{}: {} cases, {} passed, {} failed, {} skipped, {} observations differ",
            self.suite, m.total, m.passed, m.failed, m.skipped, m.observations_failed
        );
        s
    }
}
