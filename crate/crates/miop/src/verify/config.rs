//! Suite configuration, read from and written to JSON.

use serde::{Deserialize, Serialize};

use crate::error::{MiopError, Result};
use crate::families::FamilySpec;
use crate::method::Method;
use crate::params::ParamSet;
use crate::presets;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteToggles {
    pub lemma: bool,
    pub identity: bool,
    pub equivalence: bool,
    pub orthogonality: bool,
}

impl Default for SuiteToggles {
    fn default() -> Self {
        SuiteToggles { lemma: true, identity: true, equivalence: true, orthogonality: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OrthoConfig {
    pub d_sets: Vec<Vec<i64>>,
    pub max_n: i64,
}

impl Default for OrthoConfig {
    fn default() -> Self {
        OrthoConfig { d_sets: vec![vec![], vec![1], vec![2], vec![1, 2]], max_n: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub families: Vec<ParamSet>,
    /// Index sets for rdQM families.
    pub rdqm_d_sets: Vec<Vec<i64>>,
    pub rdqm_max_n: i64,
    /// idQM index sets are all nonempty subsets of `{(d, t): d <= idqm_max_d}` of size `<= idqm_max_m`.
    pub idqm_max_m: i64,
    pub idqm_max_d: i64,
    pub idqm_max_n: i64,
    /// Bound on `n` and `v` in the identity suite.
    pub identity_max_index: i64,
    /// Bound on the `M` index of the two printed `varphi_M` forms.
    pub phi_m_max: i64,
    pub methods: Vec<String>,
    pub lemma_max_n: i64,
    pub lemma_seeds: Vec<u64>,
    pub orthogonality: OrthoConfig,
    pub suites: SuiteToggles,
    /// Keep per-case wall times in serialized reports.
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let mut families: Vec<ParamSet> = presets::all_sets().iter().map(ParamSet::of).collect();
        families.extend(presets::idqm_generic_sets().iter().skip(1).map(ParamSet::of));
        SuiteConfig {
            families,
            rdqm_d_sets: vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]],
            rdqm_max_n: 4,
            idqm_max_m: 3,
            idqm_max_d: 2,
            idqm_max_n: 3,
            identity_max_index: 4,
            phi_m_max: 5,
            methods: Method::ALL.iter().map(|m| m.code().to_string()).collect(),
            lemma_max_n: 5,
            lemma_seeds: (1..=20).chain([42, 7]).collect(),
            orthogonality: OrthoConfig::default(),
            suites: SuiteToggles::default(),
            record_timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(s: &str) -> Result<SuiteConfig> {
        let cfg: SuiteConfig = serde_json::from_str(s).map_err(|e| MiopError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(MiopError::Config(m.to_string()));
        if self.families.is_empty() {
            return bad("at least one family is required");
        }
        let ranges = [
            self.rdqm_max_n,
            self.idqm_max_m,
            self.idqm_max_d,
            self.idqm_max_n,
            self.identity_max_index,
            self.phi_m_max,
            self.lemma_max_n,
            self.orthogonality.max_n,
        ];
        if ranges.iter().any(|&x| x < 0) {
            return bad("ranges must be non-negative");
        }
        if self.rdqm_d_sets.iter().chain(&self.orthogonality.d_sets).flatten().any(|&d| d < 0) {
            return bad("virtual degrees must be non-negative");
        }
        for m in &self.methods {
            Method::parse(m)?;
        }
        for f in &self.families {
            f.build()?;
        }
        Ok(())
    }

    pub fn specs(&self) -> Result<Vec<FamilySpec>> {
        self.families.iter().map(ParamSet::build).collect()
    }

    pub fn method_list(&self) -> Vec<Method> {
        self.methods.iter().filter_map(|m| Method::parse(m).ok()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let cfg = SuiteConfig::default();
        assert_eq!(SuiteConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn rejects_negative_ranges_and_empty_families() {
        let mut cfg = SuiteConfig::default();
        cfg.rdqm_max_n = -1;
        assert!(cfg.validate().is_err());
        let cfg = SuiteConfig { families: vec![], ..SuiteConfig::default() };
        assert!(cfg.validate().is_err());
        assert!(SuiteConfig::from_json("{\"bogus\": 1}").is_err());
    }
}
