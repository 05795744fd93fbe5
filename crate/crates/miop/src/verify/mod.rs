//! Batch verification: determinant lemmas, shape-invariance identities,
//! cross-route equivalence with degree and normalization audits, and exact
//! finite-lattice orthogonality.

mod config;
mod equivalence;
mod identity;
mod lemma;
mod ortho;
mod report;

pub use config::{OrthoConfig, SuiteConfig, SuiteToggles};
pub use equivalence::{idqm_d_sets, run_equivalence_suite};
pub use identity::run_identity_suite;
pub use lemma::{check_casoratian_lemma_idqm, check_casoratian_lemma_rdqm, run_lemma_suite};
pub use ortho::{run_orthogonality, run_orthogonality_suite};
pub use report::{compare, CaseMeta, CaseRecord, Comparison, Residual, Status, Summary, Value, VerifyReport};

use crate::error::Result;

/// Worker pool sized by `MIOP_THREADS` when set.
pub(crate) fn pool() -> rayon::ThreadPool {
    let n = std::env::var("MIOP_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

/// Run every enabled suite and merge the reports in a fixed order.
pub fn run_all(cfg: &SuiteConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut parts = Vec::new();
    if cfg.suites.lemma {
        parts.push(run_lemma_suite(cfg));
    }
    if cfg.suites.identity {
        parts.push(run_identity_suite(cfg)?);
    }
    if cfg.suites.equivalence {
        parts.push(run_equivalence_suite(cfg)?);
    }
    if cfg.suites.orthogonality {
        parts.push(run_orthogonality_suite(cfg)?);
    }
    Ok(VerifyReport::merge("all", parts))
}

/// Run one suite by name: `lemma`, `identity`, `equivalence`, `orthogonality` or `all`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    match name {
        "lemma" => Ok(run_lemma_suite(cfg)),
        "identity" => run_identity_suite(cfg),
        "equivalence" => run_equivalence_suite(cfg),
        "orthogonality" => run_orthogonality_suite(cfg),
        "all" => run_all(cfg),
        other => Err(crate::error::MiopError::Config(format!(
            "unknown suite `{other}` (lemma, identity, equivalence, orthogonality, all)"
        ))),
    }
}
