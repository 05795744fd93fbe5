//! End-to-end runs of the `miop` binary: outputs, formats and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn miop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miop")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

/// Small configuration so the suites finish quickly.
fn small_config(families: Value) -> Value {
    let out = miop(&["verify", "--dump-config"]);
    let mut cfg = stdout_json(&out);
    cfg["families"] = families;
    cfg["rdqm_d_sets"] = json!([[1], [1, 2]]);
    cfg["rdqm_max_n"] = json!(1);
    cfg["idqm_max_m"] = json!(2);
    cfg["idqm_max_d"] = json!(1);
    cfg["idqm_max_n"] = json!(1);
    cfg["identity_max_index"] = json!(2);
    cfg["phi_m_max"] = json!(2);
    cfg["lemma_max_n"] = json!(2);
    cfg["lemma_seeds"] = json!([1, 2]);
    cfg
}

fn write_config(name: &str, cfg: &Value) -> String {
    let p = scratch(name);
    std::fs::write(&p, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

const MEIXNER: &str = r#"{"beta":"2","c":"1/2"}"#;

#[test]
fn meixner_multi_indexed_polynomial() {
    let o = miop(&["miop", "--family", "M", "--params", MEIXNER, "--D", "1", "--n", "1", "--method", "caseA"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["eta_poly"], json!({"0": "1", "1": "-3/16", "2": "-1/16"}));
    assert_eq!(v["degree"], 2);
    assert_eq!(v["family"], "M");
    assert_eq!(v["D"], json!([1]));
    assert_eq!(v["method"], "caseA");
}

#[test]
fn wilson_ground_state_polynomial() {
    let o = miop(&["poly", "--family", "W", "--n", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["eta_poly"], json!({"0": "1"}));
    let o = miop(&["poly", "--family", "W", "--params", r#"{"a":["1","1","1","1"]}"#, "--n", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["eta_poly"], json!({"0": "1"}));
}

#[test]
fn denominator_polynomial() {
    let o = miop(&["xi", "--family", "M", "--params", MEIXNER, "--D", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["eta_poly"], json!({"0": "1", "1": "1/4"}));
    let o = miop(&["xi", "--family", "W", "--D", "1I,2I", "--method", "singleB"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["degree"], 2);
}

#[test]
fn family_info_lists_energies() {
    let o = miop(&["family-info", "--family", "R"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["kind"], "rdQM");
    assert_eq!(v["lattice_size"], 5);
    assert_eq!(v["energies"][1], "5/2");
}

#[test]
fn exit_codes() {
    let parse = miop(&["poly", "--family", "M", "--params", r#"{"beta":"1/0","c":"1/2"}"#, "--n", "1"]);
    assert_eq!(code(&parse), 2);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("hint"));

    let inadmissible = miop(&["poly", "--family", "M", "--params", r#"{"beta":"2","c":"3/2"}"#, "--n", "1"]);
    assert_eq!(code(&inadmissible), 3);

    assert_eq!(code(&miop(&["poly", "--family", "M", "--bogus"])), 2);
    assert_eq!(code(&miop(&["poly", "--family", "Z", "--n", "1"])), 2);
    assert_eq!(code(&miop(&["miop", "--family", "M", "--D", "1", "--n", "1", "--method", "singleA"])), 2);

    let aw = r#"{"q":"1/4","a":["1/2","1/8","1/4","1/4"]}"#;
    let o = miop(&["miop", "--family", "AW", "--params", aw, "--D", "1I,1II", "--n", "1", "--method", "caseA"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("witness") && err.contains("--derive-witnesses"), "{err}");
    let o = miop(&[
        "miop", "--family", "AW", "--params", aw, "--derive-witnesses", "--D", "1I,1II", "--n", "1", "--method", "caseA",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_exit_status_follows_the_report() {
    let fams = json!([{"family": "M", "params": {"beta": "2", "c": "1/2"}}]);
    let cfg = write_config("small.json", &small_config(fams));
    let o = miop(&["verify", "--suite", "identity", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["suite"], "identity");
    assert_eq!(v["summary"]["failed"], 0);

    // the symmetric Wilson set has coincident energies, so some route outputs vanish
    let fams = json!([{"family": "W", "params": {"a1": "1", "a2": "1", "a3": "1", "a4": "1"}}]);
    let cfg = write_config("degenerate.json", &small_config(fams));
    let o = miop(&["verify", "--suite", "equivalence", "--config", &cfg]);
    assert_eq!(code(&o), 1);
    assert!(stdout_json(&o)["summary"]["failed"].as_u64().unwrap() > 0);

    assert_eq!(code(&miop(&["verify", "--suite", "nothing", "--config", &cfg])), 2);
    let broken = write_config("broken.json", &json!({"no_such_key": true}));
    assert_eq!(code(&miop(&["verify", "--config", &broken])), 2);
}

#[test]
fn lemma_verb() {
    let o = miop(&["lemma", "--kind", "rdqm", "--n", "4", "--seed", "42"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["summary"]["failed"], 0);
    assert_eq!(code(&miop(&["lemma", "--kind", "idqm", "--n", "5", "--seed", "7"])), 0);
    assert_eq!(code(&miop(&["lemma", "--kind", "rdqm", "--n", "0"])), 2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["miop", "--family", "qR", "--D", "1,2", "--n", "2"];
    let a = miop(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, miop(&args).stdout);

    let fams = json!([{"family": "M", "params": {"beta": "2", "c": "1/2"}}]);
    let cfg = write_config("repeat.json", &small_config(fams));
    let a = miop(&["verify", "--suite", "all", "--config", &cfg]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, miop(&["verify", "--suite", "all", "--config", &cfg]).stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_us"));
}

#[test]
fn shipped_config_is_the_dumped_default() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../config/default.json");
    let shipped: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(shipped, stdout_json(&miop(&["verify", "--dump-config"])));
}

#[test]
fn csv_pretty_and_file_output() {
    let o = miop(&["poly", "--family", "M", "--params", MEIXNER, "--n", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "power,coefficient\n0,1\n1,-1/2\n");
    let o = miop(&["poly", "--family", "M", "--params", MEIXNER, "--n", "1", "--format", "pretty"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("eta^1"), "{text}");

    let o = miop(&["lemma", "--kind", "rdqm", "--n", "2", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&o.stdout).lines().count() > 1);

    let p = scratch("out.json");
    let o = miop(&["poly", "--family", "M", "--params", MEIXNER, "--n", "2", "--output", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["degree"], 2);
}
