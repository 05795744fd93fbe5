//! Index sets, single-polynomial requests and their JSON result form.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{MiopError, Result};
use crate::eta::{eta_expand, EtaPoly};
use crate::families::{FamilySpec, VType};
use crate::idqm::{self, Typed};
use crate::lattice::LatticeFun;
use crate::method::Method;
use crate::params::spec_to_json;
use crate::rdqm;

/// A multi-index set for either kind of quantum mechanics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    Rd(Vec<i64>),
    Id(Vec<Typed>),
}

impl IndexSet {
    /// Parse `1,2,3` (rdQM) or `1I,2II` (idQM; a bare degree means type I). Empty means `{}`.
    pub fn parse(s: &str, idqm: bool) -> Result<IndexSet> {
        let bad = |t: &str| MiopError::Config(format!("bad index `{t}`; use e.g. `1,2` or `1I,2II`"));
        let tokens: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        let mut rd = Vec::new();
        let mut id = Vec::new();
        for t in tokens {
            let split = t.find(|c: char| !c.is_ascii_digit() && c != '-').unwrap_or(t.len());
            let (num, suffix) = t.split_at(split);
            let d: i64 = num.parse().map_err(|_| bad(t))?;
            let ty = match suffix {
                "" | "I" => VType::I,
                "II" => VType::II,
                _ => return Err(bad(t)),
            };
            if !idqm && ty == VType::II {
                return Err(MiopError::Config(format!("`{t}`: type II applies to W and AW only")));
            }
            rd.push(d);
            id.push((d, ty));
        }
        let set = if idqm { IndexSet::Id(id) } else { IndexSet::Rd(rd) };
        set.check()?;
        Ok(set)
    }

    pub fn check(&self) -> Result<()> {
        match self {
            IndexSet::Rd(d) => rdqm::check_d(d),
            IndexSet::Id(d) => idqm::check_d(d),
        }
    }

    pub fn is_idqm(&self) -> bool {
        matches!(self, IndexSet::Id(_))
    }

    pub fn len(&self) -> usize {
        match self {
            IndexSet::Rd(d) => d.len(),
            IndexSet::Id(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Compact label such as `[1,2]` or `[1I,2II]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = match self {
            IndexSet::Rd(d) => d.iter().map(|x| x.to_string()).collect(),
            IndexSet::Id(d) => d.iter().map(|(v, t)| format!("{v}{}", t.code())).collect(),
        };
        format!("[{}]", parts.join(","))
    }

    /// Integers for rdQM, `{"d": 1, "type": "I"}` objects for idQM.
    pub fn to_json(&self) -> Value {
        match self {
            IndexSet::Rd(d) => json!(d),
            IndexSet::Id(d) => Value::Array(d.iter().map(|(v, t)| json!({"d": v, "type": t.code()})).collect()),
        }
    }

    /// `l_D`
    pub fn ell(&self) -> i64 {
        match self {
            IndexSet::Rd(d) => rdqm::ell(d),
            IndexSet::Id(d) => idqm::ell(d),
        }
    }

    /// Routes that apply to this set.
    pub fn methods(&self) -> Vec<Method> {
        match self {
            IndexSet::Rd(_) => rdqm::methods().to_vec(),
            IndexSet::Id(d) => idqm::methods_for(d),
        }
    }

    fn matches(&self, spec: &FamilySpec) -> Result<()> {
        if self.is_idqm() == spec.id.is_idqm() {
            Ok(())
        } else {
            Err(MiopError::Config(format!("index set {} does not fit family {}", self.label(), spec.id)))
        }
    }

    /// `Xi-check_D` for `n = None`, `P-check_{D,n}` otherwise.
    pub fn build(&self, spec: &FamilySpec, n: Option<i64>, m: Method) -> Result<LatticeFun> {
        self.matches(spec)?;
        match (self, n) {
            (IndexSet::Rd(d), None) => rdqm::xi_check(spec, d, m),
            (IndexSet::Rd(d), Some(n)) => rdqm::p_check(spec, d, n, m),
            (IndexSet::Id(d), None) => idqm::xi_check(spec, d, m),
            (IndexSet::Id(d), Some(n)) => idqm::p_check(spec, d, n, m),
        }
    }

    /// Expansion of a built function on the coordinate it is defined on.
    pub fn expand(&self, spec: &FamilySpec, f: &LatticeFun, n: Option<i64>) -> Result<EtaPoly> {
        let m = match self {
            IndexSet::Rd(d) => d.len() as i64,
            IndexSet::Id(_) => return eta_expand(f, &spec.eta()),
        };
        let shift = if n.is_some() { m } else { (m - 1).max(0) };
        eta_expand(f, &spec.sd(shift).eta())
    }
}

/// One computed polynomial in serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct PolyResult {
    pub family: String,
    pub params: Value,
    #[serde(rename = "D")]
    pub d: Value,
    pub n: Option<i64>,
    pub method: String,
    pub degree: Option<usize>,
    pub eta_poly: BTreeMap<String, String>,
}

/// Build and expand one polynomial; `n = None` gives the denominator polynomial.
pub fn compute(spec: &FamilySpec, d: &IndexSet, n: Option<i64>, method: Method) -> Result<(EtaPoly, PolyResult)> {
    let f = d.build(spec, n, method)?;
    let e = d.expand(spec, &f, n)?;
    let res = PolyResult {
        family: spec.id.code().to_string(),
        params: spec_to_json(spec),
        d: d.to_json(),
        n,
        method: method.code().to_string(),
        degree: e.degree(),
        eta_poly: e.to_map(),
    };
    Ok((e, res))
}
