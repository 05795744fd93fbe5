//! Parameter vectors as JSON objects with rational strings.
//!
//! Accepted keys are the family's parameter names, `q` for q-families, `rho`
//! for the AW square-root witnesses, `a` as a four-element array for W/AW and
//! `N` in place of `a` for R/qR.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{MiopError, Result};
use crate::families::{make_family, split_witnesses, FamilyId, FamilySpec};
use crate::scalar::{parse_rational, pow_i, Rational};

/// A family together with its parameter object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSet {
    pub family: String,
    pub params: Value,
    /// Derive the AW witnesses when they exist and `rho` is absent.
    #[serde(default)]
    pub derive_witnesses: bool,
}

impl ParamSet {
    pub fn build(&self) -> Result<FamilySpec> {
        let id = FamilyId::parse(&self.family)?;
        spec_from_json(id, &self.params, self.derive_witnesses)
    }

    pub fn of(spec: &FamilySpec) -> ParamSet {
        ParamSet { family: spec.id.code().to_string(), params: spec_to_json(spec), derive_witnesses: false }
    }
}

fn cfg(msg: impl Into<String>) -> MiopError {
    MiopError::Config(msg.into())
}

fn scalar(v: &Value, key: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        _ => Err(cfg(format!("`{key}` must be a rational string such as \"1/2\""))),
    }
}

fn scalars(v: &Value, key: &str, len: usize) -> Result<Vec<Rational>> {
    match v {
        Value::Array(items) if items.len() == len => items.iter().map(|x| scalar(x, key)).collect(),
        _ => Err(cfg(format!("`{key}` must be an array of {len} rational strings"))),
    }
}

/// Build a family from a JSON parameter object.
pub fn spec_from_json(id: FamilyId, v: &Value, derive_witnesses: bool) -> Result<FamilySpec> {
    let obj: &Map<String, Value> = v.as_object().ok_or_else(|| cfg("parameters must be a JSON object"))?;
    let names = id.param_names();
    let mut vals: Vec<Option<Rational>> = vec![None; names.len()];
    let mut q = None;
    let mut rho = None;
    let mut big_n = None;
    for (key, val) in obj {
        match key.as_str() {
            "q" if id.is_q() => q = Some(scalar(val, key)?),
            "rho" if id == FamilyId::AW => {
                let r = scalars(val, key, 2)?;
                rho = Some([r[0].clone(), r[1].clone()]);
            }
            "N" if matches!(id, FamilyId::R | FamilyId::QR) => {
                let n = scalar(val, key)?;
                if !n.is_integer() || n <= Rational::from_integer(0.into()) {
                    return Err(cfg("`N` must be a positive integer"));
                }
                big_n = Some(i64::try_from(n.to_integer()).map_err(|_| cfg("`N` too large"))?);
            }
            "a" if id.is_idqm() => {
                for (slot, x) in vals.iter_mut().zip(scalars(val, key, 4)?) {
                    *slot = Some(x);
                }
            }
            _ => match names.iter().position(|n| n == key) {
                Some(k) => vals[k] = Some(scalar(val, key)?),
                None => return Err(cfg(format!("unknown parameter `{key}` for {id}"))),
            },
        }
    }
    if let Some(n) = big_n {
        if vals[0].is_some() {
            return Err(cfg("give either `a` or `N`, not both"));
        }
        vals[0] = Some(match id {
            FamilyId::R => Rational::from_integer((-n).into()),
            _ => {
                let qq = q.clone().ok_or_else(|| cfg("`N` for qR needs `q`"))?;
                pow_i(&qq, -n)
            }
        });
    }
    let mut out = Vec::new();
    for (k, x) in vals.into_iter().enumerate() {
        out.push(x.ok_or_else(|| cfg(format!("missing parameter `{}` for {id}", names[k])))?);
    }
    if id.is_q() && q.is_none() {
        return Err(cfg(format!("missing parameter `q` for {id}")));
    }
    if rho.is_none() && derive_witnesses && id == FamilyId::AW {
        rho = split_witnesses(q.as_ref().unwrap(), &out);
    }
    make_family(id, q, out, rho)
}

/// Canonical JSON form, the inverse of [`spec_from_json`].
pub fn spec_to_json(spec: &FamilySpec) -> Value {
    let mut m = Map::new();
    if let Some(q) = spec.model.q() {
        m.insert("q".into(), Value::String(q.to_string()));
    }
    for (n, x) in spec.id.param_names().iter().zip(&spec.params.v) {
        m.insert((*n).to_string(), Value::String(x.to_string()));
    }
    if let Some(r) = &spec.params.rho {
        m.insert("rho".into(), Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_the_documented_forms() {
        let m = spec_from_json(FamilyId::M, &json!({"beta": "2", "c": "1/2"}), false).unwrap();
        assert_eq!(m.describe(), "M(beta=2, c=1/2)");
        let w = spec_from_json(FamilyId::W, &json!({"a": ["1", "1", "1", "1"]}), false).unwrap();
        assert_eq!(w.params.v.len(), 4);
        let r = spec_from_json(FamilyId::R, &json!({"N": "5", "b": "7", "c": "1", "d": "1/2"}), false).unwrap();
        assert_eq!(r.size, Some(5));
        let aw = spec_from_json(FamilyId::AW, &json!({"q": "1/4", "a": ["1/2", "1/8", "1/4", "1/4"]}), true).unwrap();
        assert!(aw.params.rho.is_some());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(spec_from_json(FamilyId::M, &json!({"beta": "2", "c": "1/0"}), false).is_err());
        assert!(spec_from_json(FamilyId::M, &json!({"beta": 2, "c": "1/2"}), false).is_err());
        assert!(spec_from_json(FamilyId::M, &json!({"beta": "2"}), false).is_err());
        assert!(spec_from_json(FamilyId::M, &json!({"beta": "2", "c": "1/2", "z": "1"}), false).is_err());
    }

    #[test]
    fn round_trip() {
        for spec in crate::presets::all_sets() {
            let back = spec_from_json(spec.id, &spec_to_json(&spec), false).unwrap();
            assert_eq!(back.params, spec.params);
        }
    }
}
