//! End-to-end tests of the binary: golden JSON outputs, exit codes, and
//! determinism of the examples report.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{:?}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn semigroup_jumps_golden() {
    let v = stdout_json(&["semigroup", "jumps", "--gens", "3,4", "--p", "3", "--json"]);
    assert_eq!(v["m"], 4);
    assert_eq!(v["candidate_jumps"], serde_json::json!([1, 4]));
    assert_eq!(v["poles_below"], serde_json::json!([4, 3, 0]));
}

#[test]
fn semigroup_jumps_gcd_error_exits_one() {
    let out = run(&["semigroup", "jumps", "--gens", "2,4", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gcd"), "stderr: {err}");
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["semigroup", "jumps", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tangent_pcyclic_with_oracle() {
    let v = stdout_json(&["tangent", "pcyclic", "--p", "3", "--s", "1", "--oracle", "--json"]);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["oracle_dim"], 1);
    assert_eq!(v["constraint_matrix"].as_array().unwrap().len(), 1);
    assert_eq!(v["v_basis"].as_array().unwrap().len(), 1);
}

#[test]
fn as_group_schema() {
    let v = stdout_json(&["as", "group", "--p", "3", "--s", "1", "--json"]);
    assert_eq!(v["order"], 27);
    assert_eq!(v["center_order"], 3);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 27);
    assert!(elements[0]["y"].is_array());
    assert!(elements[0]["c"].is_number());
}

#[test]
fn as_local_order_of_central_element() {
    let v = stdout_json(&[
        "as", "local", "--p", "3", "--s", "1", "--y", "0,0", "--c", "1", "--json",
    ]);
    assert_eq!(v["order"], 5); // m + 1 at the central translation
    assert_eq!(v["sigma"]["low"], 1);
}

#[test]
fn hensel_lift_report() {
    let v = stdout_json(&["hensel", "lift", "--p", "3", "--s", "1", "--direction", "1", "--json"]);
    assert_eq!(v["group_law_ok"], true);
    assert_eq!(v["compatible"], true);
    for e in v["elements"].as_array().unwrap() {
        assert_eq!(e["residual_zero"], true);
    }
}

#[test]
fn paper_examples_deterministic_and_green() {
    let a = run(&["paper", "examples"]);
    let b = run(&["paper", "examples"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "examples output must be reproducible");
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(!text.contains("FAIL"));
    // JSON mode reports zero failures.
    let v = stdout_json(&["paper", "examples", "--json"]);
    assert_eq!(v["failures"], 0);
}

#[test]
fn tangent_rep_from_file() {
    // Z/3 with the nontrivial character into F_3: tangent dimension 1.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.json");
    let mut file = serde_json::json!({
        "field": {"p": 3, "n": 1},
        "order": 3,
        "identity": 0,
        "table": [0,1,2, 1,2,0, 2,0,1],
        "generators": [1],
        "matrices": [],
    });
    // Matrices [[1,0],[j,1]] for j = 0,1,2 (entries as coeff vectors).
    let mats: Vec<serde_json::Value> = (0..3)
        .map(|j| {
            serde_json::json!([
                [[1], [0]],
                [[j], [1]],
            ])
        })
        .collect();
    file["matrices"] = serde_json::Value::Array(mats);
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let v = stdout_json(&["tangent", "rep", "--group", path.to_str().unwrap(), "--n", "2", "--json"]);
    assert_eq!(v["dim_tangent"], 1);
    assert_eq!(v["dim_coboundaries"], 0);
}

#[test]
fn out_flag_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "semigroup", "jumps", "--gens", "3,4", "--p", "3", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["m"], 4);
    // Human output still lands on stdout.
    assert!(String::from_utf8_lossy(&out.stdout).contains("candidate jumps"));
}
