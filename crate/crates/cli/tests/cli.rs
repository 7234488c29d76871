use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftminor"))
        .args(args)
        .output()
        .expect("spawn shiftminor")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn input_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn minors_text_lists_worked_example() {
    let out = run(&["minors", "--n", "4", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("{2,3}\tx2^2 - x1*x3\tx2^2"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn minors_json_shape() {
    let v = json(&run(&["minors", "--n", "3", "--d", "2", "--format", "json"]));
    assert_eq!(v["order"], "grevlex");
    assert_eq!(v["field"], "q");
    let polys: Vec<&str> = v["minors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["polynomial"].as_str().unwrap())
        .collect();
    assert_eq!(polys, ["x1^2", "x1*x2", "x2^2"]);
}

#[test]
fn leading_set_reports_missing_under_lex() {
    let v = json(&run(&[
        "leading-set",
        "--n",
        "4",
        "--d",
        "3",
        "--order",
        "lex",
        "--format",
        "json",
    ]));
    assert_eq!(v["complete"], false);
    assert_eq!(v["missing_leading_monomials"], serde_json::json!(["x2^2"]));
}

#[test]
fn check_groebner_exit_codes() {
    assert_eq!(run(&["check-groebner", "--n", "4", "--d", "3"]).status.code(), Some(0));
    let out = run(&["check-groebner", "--n", "4", "--d", "3", "--order", "grlex"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: NotGroebnerBasis"));
    assert!(stdout(&out).contains("counterexample: x2^2"));
}

#[test]
fn check_groebner_over_prime_field() {
    let out = run(&[
        "check-groebner",
        "--n",
        "6",
        "--d",
        "3",
        "--field",
        "fp:7",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "GroebnerBasis");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["minors", "--n", "1", "--d", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["minors", "--n", "4", "--d", "3", "--field", "fp:9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["minors", "--n", "4", "--d", "3", "--order", "revlex"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["complete-basis", "--input", "/nonexistent/f.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn caps_are_enforced() {
    let out = run(&["minors", "--n", "12", "--d", "6", "--max-minors", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn complete_basis_solves_and_reports() {
    let path = input_file(
        "cli-complete.json",
        r#"{"entries": [[1, 0, 2, 0, 1], [0, 3, 0, 1, 1]]}"#,
    );
    let out = run(&["complete-basis", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["strategy"], "grid");
    assert_eq!(v["x"].as_array().unwrap().len(), 3);
    assert_ne!(v["det_value"], "0");
}

#[test]
fn complete_basis_flags_must_match_input() {
    let path = input_file("cli-mismatch.json", r#"{"entries": [[1, 0, 2, 0, 1]]}"#);
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&["complete-basis", "--input", p, "--n", "5", "--d", "2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["complete-basis", "--input", p, "--n", "6"]).status.code(),
        Some(2)
    );
}

#[test]
fn complete_basis_rank_deficient_exits_one() {
    let path = input_file("cli-deficient.json", r#"{"entries": [[1, 2, 3, 4], [2, 4, 6, 8]]}"#);
    let out = run(&["complete-basis", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn complete_basis_small_field_exhaustion_exits_one() {
    let path = input_file("cli-f2.json", r#"{"field": "fp:2", "entries": [[0, 1, 1, 0]]}"#);
    let out = run(&["complete-basis", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn laplace_and_bijection_checks_pass() {
    let out = run(&["laplace-check", "--n", "5", "--d", "3", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS laplace-identity"));
    let out = run(&["bijection-check", "--n", "7", "--d", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["column_sets"], 35);
}

#[test]
fn verify_includes_worked_example_only_for_four_three() {
    let a = stdout(&run(&["verify", "--n", "4", "--d", "3"]));
    assert!(a.contains("worked-example"));
    assert!(a.ends_with("all checks passed\n"));
    let b = stdout(&run(&["verify", "--n", "5", "--d", "2"]));
    assert!(!b.contains("worked-example"));
}

#[test]
fn random_strategy_depends_only_on_seed() {
    let path = input_file(
        "cli-seed.json",
        r#"{"entries": [[1, -1, 0, 2, 5, 1]], "field": "fp:10007"}"#,
    );
    let p = path.to_str().unwrap();
    let a = run(&["complete-basis", "--input", p, "--strategy", "random", "--seed", "9"]);
    let b = run(&["complete-basis", "--input", p, "--strategy", "random", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
