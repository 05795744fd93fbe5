//! Verification suites: reports, skips, determinism and error paths.

use miop::families::{make_family, FamilyId};
use miop::method::Method;
use miop::params::ParamSet;
use miop::presets;
use miop::rdqm;
use miop::scalar::{rat, rint};
use miop::verify::{self, OrthoConfig, Status, SuiteConfig, SuiteToggles};
use miop::{FamilySpec, MiopError};

fn config(specs: &[FamilySpec]) -> SuiteConfig {
    SuiteConfig { families: specs.iter().map(ParamSet::of).collect(), ..SuiteConfig::default() }
}

#[test]
fn identity_suite_passes_on_every_family() {
    let r = verify::run_identity_suite(&config(&presets::all_sets())).unwrap();
    assert!(r.summary.total > 0);
    assert_eq!(r.summary.failed, 0, "{:?}", r.failures().map(|c| &c.id).collect::<Vec<_>>());
    assert_eq!(r.summary.skipped, 0);
}

#[test]
fn askey_wilson_without_witnesses_skips_split_identities() {
    let bare = presets::askey_wilson(false).unwrap();
    let r = verify::run_identity_suite(&config(&[bare])).unwrap();
    assert!(r.summary.skipped > 0);
    assert_eq!(r.summary.failed, 0);
    for c in r.records.iter().filter(|c| c.status == Status::Skipped) {
        assert_eq!(c.note.as_deref(), Some("skipped: needs split parameters"), "{}", c.id);
    }
    assert!(r.all_pass());
}

#[test]
fn equivalence_on_generic_idqm_sets() {
    let cfg = SuiteConfig { idqm_max_m: 2, idqm_max_d: 1, idqm_max_n: 1, ..config(&presets::idqm_generic_sets()) };
    let r = verify::run_equivalence_suite(&cfg).unwrap();
    assert!(r.summary.passed > 0);
    assert_eq!(r.summary.failed, 0, "{:?}", r.failures().map(|c| &c.id).collect::<Vec<_>>());
}

#[test]
fn equivalence_on_rdqm_grid() {
    let cfg = SuiteConfig { rdqm_d_sets: vec![vec![], vec![1], vec![2, 3]], rdqm_max_n: 2, ..config(&presets::rdqm_sets()) };
    let r = verify::run_equivalence_suite(&cfg).unwrap();
    assert!(r.summary.passed > 0);
    assert_eq!(r.summary.failed, 0, "{:?}", r.failures().map(|c| &c.id).collect::<Vec<_>>());
    assert!(r.records.iter().any(|c| c.id.ends_with("caseB==original")));
}

#[test]
fn orthogonality_on_finite_lattices() {
    for s in [presets::racah(), presets::q_racah()] {
        for d in [vec![], vec![1], vec![1, 2]] {
            let r = verify::run_orthogonality(&s, &d, 3).unwrap();
            assert_eq!(r.summary.total, 10);
            assert!(r.all_pass(), "{} D={d:?}", s.describe());
        }
    }
    let cfg = SuiteConfig { orthogonality: OrthoConfig { d_sets: vec![vec![2]], max_n: 2 }, ..config(&presets::all_sets()) };
    let r = verify::run_orthogonality_suite(&cfg).unwrap();
    assert_eq!(r.summary.total, 12);
    assert!(r.all_pass());
}

#[test]
fn orthogonality_rejects_unsuitable_inputs() {
    let err = verify::run_orthogonality(&presets::meixner(), &[1], 2).unwrap_err();
    assert!(matches!(err, MiopError::Unsupported(_)));
    let err = verify::run_orthogonality(&presets::wilson_generic(), &[1], 2).unwrap_err();
    assert!(matches!(err, MiopError::Unsupported(_)));

    // xi_1 = 1 - (4 + 2/c) eta / 143 here, which vanishes at x = 2 for c = 10/123
    let bad = make_family(FamilyId::R, None, vec![rint(-5), rint(7), rat(10, 123), rat(1, 2)], None).unwrap();
    let xi = rdqm::xi_check(&bad, &[1], Method::Original).unwrap();
    assert_eq!(rdqm::eval_int(&xi, 2).unwrap(), miop::scalar::gi(0));
    let err = verify::run_orthogonality(&bad, &[1], 2).unwrap_err();
    assert!(matches!(err, MiopError::Inadmissible(_)), "{err:?}");
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig {
        families: vec![ParamSet::of(&presets::meixner()), ParamSet::of(&presets::askey_wilson_split())],
        rdqm_d_sets: vec![vec![1, 2]],
        rdqm_max_n: 1,
        idqm_max_m: 1,
        idqm_max_d: 1,
        idqm_max_n: 1,
        identity_max_index: 2,
        phi_m_max: 2,
        lemma_max_n: 2,
        lemma_seeds: vec![1, 2],
        ..SuiteConfig::default()
    };
    let a = verify::run_all(&cfg).unwrap().to_json(false).unwrap();
    let b = verify::run_all(&cfg).unwrap().to_json(false).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("wall_us"));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["suite"], "all");
    assert!(v["summary"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn lemma_examples() {
    for (n, seed) in [(1, 1), (2, 3), (4, 42)] {
        let r = verify::check_casoratian_lemma_rdqm(n, seed);
        assert!(r.summary.total > 0 && r.all_pass(), "rdqm n={n} seed={seed}");
    }
    for (n, seed) in [(1, 1), (5, 7)] {
        let r = verify::check_casoratian_lemma_idqm(n, seed);
        assert!(r.summary.total > 0 && r.all_pass(), "idqm n={n} seed={seed}");
    }
    let a = verify::check_casoratian_lemma_rdqm(3, 9).to_json(false).unwrap();
    assert_eq!(a, verify::check_casoratian_lemma_rdqm(3, 9).to_json(false).unwrap());
}

#[test]
fn suite_selection_and_config_errors() {
    let cfg = SuiteConfig::default();
    assert!(matches!(verify::run_suite("bogus", &cfg), Err(MiopError::Config(_))));

    let text = cfg.to_json();
    assert_eq!(SuiteConfig::from_json(&text).unwrap(), cfg);
    assert!(matches!(SuiteConfig::from_json("{\"unknown\": 1}"), Err(MiopError::Config(_))));
    assert!(matches!(SuiteConfig::from_json("{\"rdqm_max_n\": -1}"), Err(MiopError::Config(_))));
    assert!(matches!(SuiteConfig::from_json("{\"methods\": [\"sideways\"]}"), Err(_)));
    let none = SuiteConfig { families: vec![], ..SuiteConfig::default() };
    assert!(matches!(verify::run_suite("lemma", &none), Err(MiopError::Config(_))));

    // disabled suites are left out of the merged report
    let only = SuiteConfig {
        suites: SuiteToggles { lemma: true, identity: false, equivalence: false, orthogonality: false },
        lemma_max_n: 1,
        lemma_seeds: vec![1],
        ..SuiteConfig::default()
    };
    let r = verify::run_all(&only).unwrap();
    assert!(r.records.iter().all(|c| c.id.starts_with("lemma")));
}

#[test]
fn shipped_config_matches_defaults() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../config/default.json");
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(SuiteConfig::from_json(&text).unwrap(), SuiteConfig::default());
}
