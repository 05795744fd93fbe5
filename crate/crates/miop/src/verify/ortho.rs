//! Exact Gram matrices of the deformed polynomials on the finite lattices of R and qR.

use num_traits::Zero;
use rayon::prelude::*;

use super::equivalence::rd_label;
use super::report::{CaseMeta, CaseRecord, Outcome, Value, VerifyReport};
use super::SuiteConfig;
use crate::error::{MiopError, Result};
use crate::families::{FamilySpec, VType};
use crate::method::Method;
use crate::rdqm;
use crate::scalar::{g, Rational};

/// `psi_D(x)^2` at `x = 0..=N`, from `Xi(1) phi_0(x; lambda + M delta~)^2 / (Xi(x) Xi(x + 1))`.
fn psi_sq(spec: &FamilySpec, d: &[i64]) -> Result<Vec<Rational>> {
    let n = spec.size.ok_or_else(|| MiopError::Unsupported("orthogonality needs a finite lattice".into()))?;
    let xi = rdqm::xi_check(spec, d, Method::Original)?;
    let vals: Vec<Rational> = (0..=n + 1).map(|x| rdqm::eval_int(&xi, x).map(|v| v.re)).collect::<Result<_>>()?;
    if let Some(x) = vals.iter().position(|v| v.is_zero()) {
        return Err(MiopError::Inadmissible(format!("denominator polynomial vanishes at x={x}")));
    }
    let shifted = spec.sdt(VType::I, d.len() as i64);
    (0..=n as usize)
        .map(|x| Ok(&vals[1] * shifted.phi0_sq_at(x as i64)? / (&vals[x] * &vals[x + 1])))
        .collect()
}

/// Gram entries `G_mn` for `m <= n <= max_n`: off-diagonals must vanish, diagonals must not.
pub fn run_orthogonality(spec: &FamilySpec, d: &[i64], max_n: i64) -> Result<VerifyReport> {
    rdqm::check_d(d)?;
    let label = spec.describe();
    let dl = rd_label(d);
    let w = psi_sq(spec, d)?;
    let size = w.len() as i64;
    let polys: Vec<Vec<Rational>> = (0..=max_n)
        .map(|n| {
            let p = rdqm::p_check(spec, d, n, Method::Original)?;
            (0..size).map(|x| rdqm::eval_int(&p, x).map(|v| v.re)).collect()
        })
        .collect::<Result<_>>()?;
    let mut recs = Vec::new();
    for m in 0..=max_n as usize {
        for n in m..=max_n as usize {
            let meta = CaseMeta { family: Some(label.clone()), d: Some(dl.clone()), n: Some(n as i64), ..CaseMeta::default() };
            let id = format!("orthogonality/{label}/D={dl}/G[{m},{n}]");
            recs.push(CaseRecord::run(id, meta, || {
                let gmn = (0..w.len()).fold(Rational::zero(), |acc, x| acc + &w[x] * &polys[m][x] * &polys[n][x]);
                if m == n {
                    let nonzero = i64::from(!gmn.is_zero());
                    Ok(Outcome::Compare(Value::Int(nonzero), Value::Int(1)))
                } else {
                    Ok(Outcome::Compare(Value::Scalar(g(gmn)), Value::Scalar(g(Rational::zero()))))
                }
            }));
        }
    }
    Ok(VerifyReport::new("orthogonality", recs))
}

/// Gram checks for every configured finite family and index set.
pub fn run_orthogonality_suite(cfg: &SuiteConfig) -> Result<VerifyReport> {
    let mut jobs = Vec::new();
    for spec in cfg.specs()? {
        if spec.id.is_idqm() || spec.size.is_none() {
            continue;
        }
        for d in &cfg.orthogonality.d_sets {
            jobs.push((spec.clone(), d.clone()));
        }
    }
    let max_n = cfg.orthogonality.max_n;
    let parts: Vec<VerifyReport> = super::pool().install(|| {
        jobs.par_iter()
            .map(|(spec, d)| {
                run_orthogonality(spec, d, max_n).unwrap_or_else(|e| {
                    let id = format!("orthogonality/{}/D={}", spec.describe(), rd_label(d));
                    let meta = CaseMeta { family: Some(spec.describe()), d: Some(rd_label(d)), ..CaseMeta::default() };
                    VerifyReport::new("orthogonality", vec![CaseRecord::run(id, meta, || Err(e))])
                })
            })
            .collect()
    });
    Ok(VerifyReport::merge("orthogonality", parts))
}
