use std::path::Path;
use std::process::{Command, Output};

use fqg_core::descriptor;
use fqg_core::models::kac_paljutkin;
use proptest::prelude::*;
use serde_json::Value;

fn fqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqg")).args(args).env_remove("FQG_THREADS").output().expect("spawn fqg")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_without_timing(o: &Output) -> Value {
    let mut v: Value = serde_json::from_slice(&o.stdout).expect("json report");
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

fn kp_descriptor() -> Value {
    descriptor::to_json(&kac_paljutkin())
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_kp_all() {
    let o = fqg(&["verify", "kp", "--checks", "all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("five solvable series"));
    assert!(out.contains("eight R-matrices"));
}

#[test]
fn verify_sekine_three() {
    let o = fqg(&["verify", "sekine", "--k", "3", "--checks", "hopf,haar,series-nilpotent"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn corrupted_descriptor_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut d = kp_descriptor();
    d["delta"]["4"][0][2] = Value::from("2");
    let path = write(dir.path(), "broken.json", &d);
    let o = fqg(&["verify", "descriptor", &path, "--checks", "hopf", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_without_timing(&o);
    let hopf = &v["checks"][0];
    assert_eq!(hopf["passed"], false);
    let witness = hopf["witnesses"][0].as_str().unwrap();
    assert!(witness.starts_with("axiom `"), "{witness}");
    assert!(witness.contains(" at ("), "{witness}");
}

#[test]
fn downstream_checks_skipped_after_axiom_failure() {
    let dir = tempfile::tempdir().unwrap();
    let mut d = kp_descriptor();
    d["counit"]["0"] = Value::from("0");
    let path = write(dir.path(), "broken.json", &d);
    let o = fqg(&["verify", "descriptor", &path, "--checks", "haar", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_without_timing(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["check"], "hopf");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&fqg(&["verify", "descriptor", missing.to_str().unwrap(), "--checks", "hopf"])), 2);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&fqg(&["verify", "descriptor", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&fqg(&["classdims", "--p", "7", "--q", "5", "--walk"])), 2);
    assert_eq!(code(&fqg(&["verify", "sekine"])), 2);
    assert_eq!(code(&fqg(&["verify", "kp", "--checks", "nonsense"])), 2);
    assert_eq!(code(&fqg(&["verify", "group-algebra", "--group", "z3", "--checks", "rmatrix"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_fqg")).args(["verify", "kp", "--checks", "hopf"]).env("FQG_THREADS", "0").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn golden_report() {
    let o = fqg(&["verify", "kp", "--checks", "hopf,haar,series-solvable", "--json"]);
    assert_eq!(code(&o), 0);
    let golden: Value = serde_json::from_str(include_str!("golden/kp_verify.json")).unwrap();
    assert_eq!(json_without_timing(&o), golden);
}

#[test]
fn reports_are_deterministic() {
    let args = ["coideals", "kp", "--json"];
    assert_eq!(json_without_timing(&fqg(&args)), json_without_timing(&fqg(&args)));
}

#[test]
fn build_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.json");
    let o = fqg(&["build", "sekine", "--k", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = fqg(&["verify", "descriptor", path.to_str().unwrap(), "--checks", "hopf,haar,coideals"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn rmatrix_readings() {
    assert_eq!(code(&fqg(&["rmatrix", "verify"])), 0);
    let o = fqg(&["rmatrix", "verify", "--reading", "literal", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_without_timing(&o);
    let failed: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert_eq!(failed.len(), 2);
    let o = fqg(&["rmatrix", "solve", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_without_timing(&o);
    assert_eq!(v["checks"][0]["data"]["candidates"].as_array().unwrap().len(), 8);
    assert_eq!(code(&fqg(&["rmatrix", "solve", "--candidate-bound", "1"])), 2);
}

#[test]
fn supplied_rmatrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let h = kac_paljutkin();
    let one = fqg_core::TensorElem::unit(h.signature(), 2);
    let path = write(dir.path(), "r.json", &descriptor::tensor_to_json(&one));
    let o = fqg(&["verify", "kp", "--checks", "rmatrix", "--rmatrix", &path]);
    assert_eq!(code(&o), 1, "1⊗1 does not intertwine the noncocommutative coproduct");
}

#[test]
fn classdims_output() {
    let o = fqg(&["classdims", "--p", "7", "--q", "3", "--forbidden", "1,p,q", "--walk", "--list", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_without_timing(&o);
    let data = &v["checks"][0]["data"];
    assert_eq!(data["count"], 6);
    assert_eq!(data["walk"]["final_value"], 0);
    assert_eq!(data["multisets"].as_array().unwrap().len(), 6);
}

#[test]
fn reproduce_small() {
    let o = fqg(&["reproduce-paper", "--sekine-max-k", "3", "--json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json_without_timing(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert_eq!(v["passed"], true);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Exit code is 1 exactly when the in-process axiom check fails.
    #[test]
    fn exit_code_tracks_axioms(x in 0usize..8, term in 0usize..4, lit in prop::sample::select(vec!["2", "-1", "0", "1/2", "z4"])) {
        let dir = tempfile::tempdir().unwrap();
        let mut d = kp_descriptor();
        let terms = d["delta"][x.to_string()].as_array_mut().unwrap();
        let t = term % terms.len();
        terms[t][2] = Value::from(lit);
        let expected = match descriptor::from_json(&d) {
            Ok(h) => if h.verify_hopf().all_pass() { 0 } else { 1 },
            Err(_) => 2,
        };
        let path = write(dir.path(), "fault.json", &d);
        prop_assert_eq!(code(&fqg(&["verify", "descriptor", &path, "--checks", "hopf"])), expected);
    }
}
