use std::process::{Command, Output};

use serde_json::Value;

const PERAZZO: &str = "x0*x3^2 + 2*x1*x3*x4 + x2*x4^2";

fn saga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saga")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = saga(&all);
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap_or(Value::Null), code)
}

#[test]
fn analyze_perazzo() {
    let (v, code) = json(&["analyze", PERAZZO]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["hilbert"], serde_json::json!([1, 5, 5, 1]));
    assert_eq!(v["cone"], false);
    assert_eq!(v["hess_zero"], true);
    assert_eq!(v["summary"]["slp1"], "fails");
}

#[test]
fn analyze_generators() {
    let (v, code) = json(&["analyze", "x0^2;x1^2;x2^2;x3^2;x4^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["hilbert"], serde_json::json!([1, 5, 10, 10, 5, 1]));
    assert_eq!(v["summary"]["slp1"], "holds");
    assert_eq!(v["summary"]["slp2"], "holds");
    let (v, _) = json(&["analyze", "x0^3"]);
    assert_eq!(v["hilbert"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["summary"]["slp1"], "holds");
}

#[test]
fn input_files_and_output_paths() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gens.txt");
    std::fs::write(&input, "# cubes and a square\nx0^3\nx1^3\n\nx2^2 # last\n").unwrap();
    let output = dir.path().join("out.json");
    let out = saga(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "json",
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 5, 5, 3, 1]));
}

#[test]
fn output_is_reproducible() {
    let run = |jobs: &str| saga(&["analyze", PERAZZO, "--format", "json", "--seed", "9", "--jobs", jobs]).stdout;
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("4"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(saga(&["experiment", "nope"]).status.code(), Some(2));
    assert_eq!(saga(&["fixture", "nope"]).status.code(), Some(2));
    assert_eq!(saga(&["analyze", "x0^"]).status.code(), Some(2));
    assert_eq!(saga(&["analyze"]).status.code(), Some(2));
    assert_eq!(saga(&["analyze", "x0", "--field", "fp:4"]).status.code(), Some(2));
    let out = saga(&["analyze", "x0*x1; x0^2 + x0*x1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 3"));
}

#[test]
fn skipped_draws_do_not_fail() {
    let (v, code) = json(&["experiment", "theorem_c", "--trials", "1", "--coeff-box", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["skipped"], 1);
    assert_eq!(v["family"], "theorem_c");
}

#[test]
fn perazzo_fixture() {
    let (v, code) = json(&["fixture", "perazzo"]);
    assert_eq!(code, 0);
    let assertions = v["assertions"].as_object().unwrap();
    assert!(assertions.values().all(|b| b == true));
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
    let text = String::from_utf8(saga(&["fixture", "perazzo"]).stdout).unwrap();
    assert!(text.contains("note:"));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn gamma_samples() {
    let (v, code) = json(&["gamma", "--corpus", "perazzo", "--samples", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["samples"][0]["sample"]["kernel_dim_at_x"], 1);
    let (v, code) = json(&["gamma", "x0^2;x1^2;x2^2;x3^2;x4^2", "--k", "3", "--samples", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["samples"][1]["empty_fiber"], true);
}

#[test]
fn corpus_lookup() {
    let (v, code) = json(&["analyze", "--corpus", "cone_x0_cubed_5_vars"]);
    assert_eq!(code, 0);
    assert_eq!(v["cone"], true);
    assert_eq!(saga(&["analyze", "--corpus", "missing"]).status.code(), Some(2));
}
