//! End-to-end runs of the `adjq` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn adjq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adjq"))
        .args(args)
        .env_remove("ADJQ_SEED")
        .output()
        .expect("binary runs")
}

fn g(name: &str) -> String {
    golden(name).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn tax_bracket_matches_golden() {
    let out = adjq(&["stat", "--input", &g("tax_samples.csv"), "--handicap", &g("tax_handicap.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(out.stdout, std::fs::read(golden("tax_stat.json")).unwrap());
    let v = json(&out);
    assert_eq!(v["statistic_value"], 5.0);
    assert_eq!(v["binding_alpha"], 0.9);
    assert_eq!(v["binding_quantile"], 10.0);
    assert_eq!(v["representation_crosscheck"], "pass");
}

#[test]
fn median_of_four_samples() {
    let out = adjq(&["stat", "--input", &g("four_samples.csv"), "--quantile", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["statistic_value"], 2.0);
    assert_eq!(v["binding_alpha"], 0.5);
}

#[test]
fn output_flag_writes_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["stat", "--input", &g("tax_samples.csv"), "--handicap", &g("tax_handicap.json")];
    let mut with_output = args.to_vec();
    let p = path.display().to_string();
    with_output.extend(["--output", &p]);
    let out = adjq(&with_output);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), adjq(&args).stdout);
}

#[test]
fn json_cdf_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cdf.json");
    std::fs::write(&path, r#"{"breakpoints":[0,10],"levels":[0.5,1]}"#).unwrap();
    let p = path.display().to_string();
    let out = adjq(&["stat", "--input", &p, "--handicap", &g("tax_handicap.json")]);
    assert_eq!(out.stdout, std::fs::read(golden("tax_stat.json")).unwrap());
}

#[test]
fn malformed_csv_names_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "1\n2\nseven\n").unwrap();
    let p = path.display().to_string();
    let out = adjq(&["stat", "--input", &p, "--quantile", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 3") && err.contains("seven"), "{err}");
}

#[test]
fn invalid_handicap_names_class() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"cut_points":[0.5,0.9],"values":[5,0]}"#).unwrap();
    let p = path.display().to_string();
    let out = adjq(&["stat", "--input", &g("tax_samples.csv"), "--handicap", &p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("HandicapFn"), "{}", stderr(&out));
}

#[test]
fn statistic_spec_required_once() {
    let out = adjq(&["stat", "--input", &g("tax_samples.csv")]);
    assert_eq!(out.status.code(), Some(1));
    let out = adjq(&[
        "stat", "--input", &g("tax_samples.csv"), "--quantile", "0.5", "--handicap", &g("tax_handicap.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--quantile, --handicap") || stderr(&out).contains("--handicap, --quantile"));
    let out = adjq(&["stat", "--input", &g("tax_samples.csv"), "--quantile", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_arguments_exit_one() {
    assert_eq!(adjq(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(adjq(&["stat", "--nope"]).status.code(), Some(1));
    assert_eq!(adjq(&["--help"]).status.code(), Some(0));
}

#[test]
fn convert_two_jump_shape() {
    let out = adjq(&["convert", "--shape", &g("two_jump_shape.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(out.stdout, std::fs::read(golden("two_jump_convert.json")).unwrap());
    let v = json(&out);
    assert_eq!(v["output"]["class"], "handicap");
    assert_eq!(v["output"]["value"]["cut_points"], serde_json::json!([0.3, 0.6]));
    assert_eq!(v["output"]["value"]["values"], serde_json::json!([0.0, 2.0, "inf"]));
    assert_eq!(v["round_trip"], true);
}

#[test]
fn convert_quantile_to_dual() {
    let out = adjq(&["convert", "--quantile", "0.25", "--dual"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    // d(alpha) = -c(1 - alpha): -inf below 0.75, 0 from 0.75 on
    assert_eq!(v["output"]["class"], "dual_handicap");
    assert_eq!(v["output"]["value"]["cut_points"], serde_json::json!([0.75]));
    assert_eq!(v["output"]["value"]["values"], serde_json::json!(["-inf", 0.0]));
    assert_eq!(v["round_trip"], true);
}

#[test]
fn convert_detects_input_class() {
    let out = adjq(&["convert", "--input", &g("tax_handicap.json")]);
    let v = json(&out);
    assert_eq!(v["input"]["class"], "handicap");
    assert_eq!(v["output"]["class"], "shape");
    assert_eq!(v["output"]["value"]["jump_points"], serde_json::json!([0.0, 5.0]));
    assert_eq!(v["output"]["value"]["jump_levels"], serde_json::json!([0.5, 0.9]));
}

#[test]
fn lattice_of_point_masses() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    std::fs::write(&a, "1\n").unwrap();
    std::fs::write(&b, "3\n").unwrap();
    let (a, b) = (a.display().to_string(), b.display().to_string());
    let out = adjq(&["lattice", "--input", &a, "--input", &b]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["join"], serde_json::json!({"breakpoints": [3.0], "levels": [1.0]}));
    assert_eq!(v["meet"], serde_json::json!({"breakpoints": [1.0], "levels": [1.0]}));
    assert_eq!(v["second_dominates_first"], true);
    assert_eq!(v["first_dominates_second"], false);
    assert_eq!(adjq(&["lattice", "--input", &a]).status.code(), Some(1));
}

#[test]
fn coupling_of_uniforms() {
    let out = adjq(&["coupling", "--input", &g("uniform_0_1.csv"), "--input", &g("uniform_2_5.csv")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(out.stdout, std::fs::read(golden("coupling_uniform.json")).unwrap());
    let v = json(&out);
    assert_eq!(v["coupling"]["outcomes"], serde_json::json!([[0.5, 0.0, 2.0], [0.5, 1.0, 5.0]]));
    for flag in ["comonotonic", "marginal_x_reproduced", "marginal_y_reproduced"] {
        assert_eq!(v[flag], true, "{flag}");
    }
}

#[test]
fn coupling_checks_a_joint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("joint.json");
    std::fs::write(&path, r#"{"outcomes":[[0.5,0,1],[0.5,1,0]]}"#).unwrap();
    let p = path.display().to_string();
    let v = json(&adjq(&["coupling", "--input", &p]));
    assert_eq!(v["comonotonic"], false);
    assert_eq!(v["max_dominates_join"], true);
    assert_eq!(v["meet_dominates_min"], true);
    assert_eq!(v["max_cdf"], serde_json::json!({"breakpoints": [1.0], "levels": [1.0]}));
}

#[test]
fn explain_marks_binding_cell() {
    let out = adjq(&["explain", "--input", &g("tax_samples.csv"), "--handicap", &g("tax_handicap.json")]);
    let v = json(&out);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(cells[1]["binding"], true);
    assert_eq!(cells[1]["alpha_high"], 0.9);
    assert_eq!(v["kind"], "maximal");
}

#[test]
fn check_small_run_passes_and_is_deterministic() {
    let a = adjq(&["check", "--trials", "30", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let reports = json(&a);
    for r in reports.as_array().unwrap() {
        assert_eq!(r["failures"], 0, "{r}");
        assert!(r["first_failure_seed"].is_null());
    }
    assert_eq!(a.stdout, adjq(&["check", "--trials", "30", "--seed", "5"]).stdout);
}

#[test]
fn check_seed_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_adjq"));
        cmd.args(args).env_remove("ADJQ_SEED");
        if let Some(s) = env {
            cmd.env("ADJQ_SEED", s);
        }
        cmd.output().unwrap().stdout
    };
    let injected = ["check", "--trials", "20", "--inject-mean"];
    let from_env = run(Some("9"), &injected);
    let mut explicit = injected.to_vec();
    explicit.extend(["--seed", "9"]);
    assert_eq!(from_env, run(None, &explicit));
    assert_ne!(from_env, run(None, &injected));
}

#[test]
fn injected_mean_fails_join_separability() {
    let out = adjq(&["check", "--trials", "50", "--inject-mean"]);
    assert_eq!(out.status.code(), Some(2));
    let reports = json(&out);
    let mean = reports
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "join_separability_mean")
        .unwrap();
    assert!(mean["failures"].as_u64().unwrap() > 0);
    assert!(mean["first_failure_seed"].is_u64());
}

#[test]
fn check_trial_bounds() {
    assert_eq!(adjq(&["check", "--trials", "0"]).status.code(), Some(1));
    let out = adjq(&["check", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().iter().all(|r| r["trials"] == 1));
}
