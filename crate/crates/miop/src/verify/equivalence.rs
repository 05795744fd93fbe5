//! Cross-route equality of the multi-indexed polynomials with degree,
//! normalization and reality audits.

use rayon::prelude::*;

use super::report::{CaseMeta, CaseRecord, Outcome, Value, VerifyReport};
use super::SuiteConfig;
use crate::error::{MiopError, Result};
use crate::eta::Eta;
use crate::families::{FamilySpec, VType};
use crate::idqm::Typed;
use crate::lattice::LatticeFun;
use crate::method::Method;
use crate::query::IndexSet;
use crate::scalar::{format_gauss, gi, rint};

/// All nonempty index sets drawn from `{(d, t): d <= max_d}` with at most `max_m` entries,
/// each listed once in increasing order.
pub fn idqm_d_sets(max_d: i64, max_m: i64) -> Vec<Vec<Typed>> {
    let pool: Vec<Typed> =
        [VType::I, VType::II].iter().flat_map(|&t| (0..=max_d).map(move |d| (d, t))).collect();
    let mut out = Vec::new();
    let n = pool.len();
    for mask in 1u64..(1u64 << n) {
        if mask.count_ones() as i64 > max_m {
            continue;
        }
        out.push((0..n).filter(|k| mask & (1 << k) != 0).map(|k| pool[k]).collect());
    }
    out.sort_by_key(|d: &Vec<Typed>| (d.len(), d.iter().map(|x| (x.1 == VType::II, x.0)).collect::<Vec<_>>()));
    out
}

pub(crate) fn rd_label(d: &[i64]) -> String {
    IndexSet::Rd(d.to_vec()).label()
}

struct Job {
    label: String,
    spec: FamilySpec,
    d: IndexSet,
    n: Option<i64>,
}

fn base_id(j: &Job) -> String {
    let n = j.n.map(|n| format!("n={n}")).unwrap_or_else(|| "Xi".into());
    format!("equivalence/{}/D={}/{n}", j.label, j.d.label())
}

fn meta(j: &Job, method: Option<Method>, degree: Option<i64>) -> CaseMeta {
    CaseMeta {
        family: Some(j.label.clone()),
        d: Some(j.d.label()),
        n: j.n,
        method: method.map(|m| m.code().to_string()),
        degree,
    }
}

fn run_job(j: &Job, allowed: &[Method]) -> Vec<CaseRecord> {
    let id = base_id(j);
    let methods: Vec<Method> = j.d.methods().into_iter().filter(|m| allowed.contains(m)).collect();
    let mut recs = Vec::new();
    let Some(&reference) = methods.first() else { return recs };
    let want_deg = j.d.ell() + j.n.unwrap_or(0);
    let built: Vec<(Method, Result<LatticeFun>)> =
        methods.iter().map(|&m| (m, j.d.build(&j.spec, j.n, m))).collect();
    for (m, out) in &built {
        if *m == reference {
            continue;
        }
        recs.push(CaseRecord::run(
            format!("{id}/{}=={}", m.code(), reference.code()),
            meta(j, Some(*m), None),
            || {
                let a = out.clone()?;
                let b = built[0].1.clone()?;
                Ok(Outcome::Compare(Value::Fun(a), Value::Fun(b)))
            },
        ));
    }
    for (m, out) in &built {
        let expanded = out.clone().and_then(|f| j.d.expand(&j.spec, &f, j.n));
        let deg = expanded.as_ref().ok().and_then(|e| e.degree()).map(|d| d as i64);
        recs.push(CaseRecord::run(format!("{id}/{}/degree", m.code()), meta(j, Some(*m), deg), || {
            let e = expanded.clone()?;
            let got = e.degree().map(|d| d as i64).unwrap_or(-1);
            Ok(Outcome::Compare(Value::Int(got), Value::Int(want_deg)))
        }));
        match &j.d {
            IndexSet::Rd(_) => {
                recs.push(CaseRecord::run(format!("{id}/{}/at-origin", m.code()), meta(j, Some(*m), deg), || {
                    let v = out.clone()?.eval_at(&rint(0))?;
                    Ok(Outcome::Compare(Value::Scalar(v), Value::Scalar(gi(1))))
                }));
            }
            IndexSet::Id(_) => {
                recs.push(CaseRecord::run(format!("{id}/{}/real", m.code()), meta(j, Some(*m), deg), || {
                    let e = expanded.clone()?;
                    let conj = Eta::new(e.coeffs().iter().map(|c| c.conj()).collect());
                    Ok(Outcome::Compare(Value::Eta(e), Value::Eta(conj)))
                }));
            }
        }
    }
    if j.n == Some(0) {
        let id = format!("{id}/{}/P0-vs-shifted-Xi", reference.code());
        let m = meta(j, Some(reference), None);
        let p = j.d.build(&j.spec, Some(0), reference);
        let xi = j.d.build(&j.spec.sd(1), None, reference);
        recs.push(match j.d {
            IndexSet::Rd(_) => CaseRecord::run(id, m, || Ok(Outcome::Compare(Value::Fun(p?), Value::Fun(xi?)))),
            IndexSet::Id(_) => proportional(id, m, p, xi),
        });
    }
    recs
}

/// Observation for imaginary shifts, where no normalization at the origin is fixed:
/// `P_{D,0}(lambda)` against a constant multiple of `Xi_D(lambda + delta)`.
fn proportional(id: String, m: CaseMeta, p: Result<LatticeFun>, xi: Result<LatticeFun>) -> CaseRecord {
    let mut ratio = None;
    let rec = CaseRecord::run(id, m, || {
        let (p, xi) = (p?, xi?);
        let top = xi.poly.hi().ok_or_else(|| MiopError::Inadmissible("shifted denominator vanishes".into()))?;
        let c = p.poly.coeff(top) / xi.poly.coeff(top);
        ratio = Some(format_gauss(&c));
        Ok(Outcome::Compare(Value::Fun(p), Value::Fun(xi.scale(&c))))
    });
    let note = match ratio {
        Some(c) => format!("observation: P_D0 = c Xi_D(lambda + delta) tested with c = {c}"),
        None => "observation: P_D0 against Xi_D(lambda + delta)".to_string(),
    };
    rec.as_observation().with_note(note)
}

/// Route equality for every configured family over its index-set grid.
pub fn run_equivalence_suite(cfg: &SuiteConfig) -> Result<VerifyReport> {
    let allowed = cfg.method_list();
    let mut jobs = Vec::new();
    for spec in cfg.specs()? {
        let label = spec.describe();
        let (dsets, max_n): (Vec<IndexSet>, i64) = if spec.id.is_idqm() {
            (idqm_d_sets(cfg.idqm_max_d, cfg.idqm_max_m).into_iter().map(IndexSet::Id).collect(), cfg.idqm_max_n)
        } else {
            (cfg.rdqm_d_sets.iter().cloned().map(IndexSet::Rd).collect(), cfg.rdqm_max_n)
        };
        for d in dsets {
            for n in std::iter::once(None).chain((0..=max_n).map(Some)) {
                jobs.push(Job { label: label.clone(), spec: spec.clone(), d: d.clone(), n });
            }
        }
    }
    let parts: Vec<Vec<CaseRecord>> =
        super::pool().install(|| jobs.par_iter().map(|j| run_job(j, &allowed)).collect());
    Ok(VerifyReport::new("equivalence", parts.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idqm_grid_size() {
        // 6 states, subsets of size 1..=3
        assert_eq!(idqm_d_sets(2, 3).len(), 6 + 15 + 20);
        assert_eq!(idqm_d_sets(0, 1), vec![vec![(0, VType::I)], vec![(0, VType::II)]]);
    }
}
