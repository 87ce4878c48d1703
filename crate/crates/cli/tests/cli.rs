use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spiegel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiegel"))
        .args(args)
        .env_remove("SPIEGEL_OUT")
        .output()
        .expect("binary runs")
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&s).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let schema = schema();
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    };
}

#[test]
fn verify_baseline_exits_zero() {
    let out = spiegel(&["verify", "--q", "2", "--p-poly", "T^2+T+1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["seed"], 0);
    assert_eq!(v["dims"]["fixed_space"], serde_json::json!([0, 1, 1]));
}

#[test]
fn reducible_prime_is_a_usage_error() {
    let out = spiegel(&["verify", "--q", "2", "--p-poly", "T^2"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not irreducible"));
}

#[test]
fn degenerate_scan_is_rejected() {
    let out = spiegel(&["scan", "--q", "2", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn bad_flags_are_usage_errors() {
    for args in [
        &["verify", "--bogus"][..],
        &["verify", "--q", "2"],
        &["verify", "--q", "2", "--degree", "2"],
        &["verify", "--q", "6", "--p-poly", "T"],
        &["verify", "--q", "2", "--p-poly", "T^2+T+1", "--jobs", "0"],
        &["verify", "--q", "2", "--p-poly", "T^2+T+1", "--format", "xml"],
        &["scan", "--q", "2", "--p-poly", "T^2+T+1"],
    ] {
        assert_eq!(spiegel(args).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn json_report_matches_schema() {
    let out = spiegel(&["verify", "--q", "2", "--p-poly", "T^3+T+1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&v);
    assert_eq!(v["oracles"]["genus"], 3);
    assert_eq!(v["oracles"]["class_number"], "71");
}

#[test]
fn schema_rejects_malformed_reports() {
    let out = spiegel(&["verify", "--q", "2", "--p-poly", "T^2+T+1"]);
    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["status"] = Value::from("MAYBE");
    assert!(!schema().is_valid(&v));
    v.as_object_mut().unwrap().remove("status");
    assert!(!schema().is_valid(&v));
}

#[test]
fn scan_writes_one_report_per_prime() {
    let dir = tempfile::tempdir().unwrap();
    let out = spiegel(&["scan", "--q", "3", "--degree", "2", "--jobs", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["p_poly"].as_str().unwrap()).collect();
    assert_eq!(names, ["T^2+1", "T^2+T+2", "T^2+2T+2"]);
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 3);
    for f in files {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert_valid(&v);
    }
}

#[test]
fn scan_of_cubics_over_f2() {
    let out = spiegel(&["scan", "--q", "2", "--degree", "3", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 2);
}

#[test]
fn verify_all_primes_matches_scan() {
    let a = spiegel(&["verify", "--q", "2", "--degree", "3", "--all-primes"]);
    let b = spiegel(&["scan", "--q", "2", "--degree", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["verify", "--q", "3", "--p-poly", "T^2+1", "--seed", "17"];
    let a = spiegel(&args);
    let b = spiegel(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 17);
}

#[test]
fn env_var_sets_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_spiegel"))
        .args(["verify", "--q", "2", "--p-poly", "T^2+T+1", "--format", "md"])
        .env("SPIEGEL_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("spiegel_q2_T_2pTp1.md")).unwrap();
    assert!(text.contains("Status: **PASS**"));
}
