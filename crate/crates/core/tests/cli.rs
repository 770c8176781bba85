use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gabor-theta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}\n{instance:#}");
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let o = bin(args);
    let v = serde_json::from_str(&stdout(&o)).expect("stdout is JSON");
    (o.status.code().unwrap(), v)
}

#[test]
fn eval_human() {
    let o = bin(&["eval", "--family", "theta3", "--s", "1", "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("1.08643481121"), "{out}");
    assert!(out.contains("[±"));
}

#[test]
fn eval_json_validates() {
    for args in [
        vec!["eval", "--family", "theta4", "--s", "0.1", "--order", "2", "--format", "json"],
        vec!["eval", "--family", "theta_odd", "--s", "3", "--format", "json"],
        vec!["eval", "--family", "theta_general", "--z", "0.25", "--s", "1", "--format", "json"],
    ] {
        let (code, v) = json_of(&args);
        assert_eq!(code, 0);
        assert_valid("eval.schema.json", &v);
    }
    let (_, v) = json_of(&["eval", "--family", "theta_general", "--z", "0.25", "--s", "1", "--format", "json"]);
    assert!((v["value"].as_f64().unwrap() - 0.9999930254).abs() < 1e-10);
}

#[test]
fn bounds_json_validates() {
    let (code, v) = json_of(&["bounds", "--n", "2", "--beta", "0.70710678", "--format", "json"]);
    assert_eq!(code, 0);
    assert_valid("bounds.schema.json", &v);
    assert!((v["lower"].as_f64().unwrap() - 1.6692537).abs() < 1e-7);
    assert!((v["upper"].as_f64().unwrap() - 2.3606812).abs() < 1e-7);
    assert!((v["ratio"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-7);
    assert_eq!(v["valid"], Value::Bool(true));

    let (code, v) = json_of(&["bounds", "--n", "1", "--beta", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_valid("bounds.schema.json", &v);
    assert_eq!(v["valid"], Value::Bool(false));
    assert!(v["ratio"].is_null());
}

#[test]
fn verify_json_validates() {
    let (code, v) = json_of(&["verify", "--format", "json"]);
    assert_eq!(code, 0);
    assert_valid("verify.schema.json", &v);
    assert_eq!(v["passed"], Value::Bool(true));
    let (code, v) = json_of(&["verify", "--suite", "poisson", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_failure_exits_3() {
    // a residual threshold of 1e-300 cannot be met by any identity suite
    let o = bin(&["verify", "--suite", "jacobi_identity", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn oracle_json_validates() {
    let (code, v) = json_of(&["oracle", "--n", "3", "--beta", "0.4", "--grid", "64", "--format", "json"]);
    assert_eq!(code, 0);
    assert_valid("oracle.schema.json", &v);
    assert!(v["deviation"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["argmin"], serde_json::json!([0.5, 0.5]));
    let o = bin(&["oracle", "--n", "2", "--beta", "0.7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max F"));
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    for args in [
        vec!["eval", "--family", "theta3", "--s", "-1"],
        vec!["bounds", "--n", "2", "--beta", "1e-5"],
        vec!["oracle", "--n", "2", "--beta", "0.7", "--grid", "7"],
        vec!["verify", "--tol", "-1"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(o.stdout.is_empty());
    }
    let err = String::from_utf8(bin(&["eval", "--family", "theta3", "--s", "-1"]).stderr).unwrap();
    assert!(err.contains("domain"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["bounds", "--n", "0", "--beta", "1"],
        vec!["eval", "--family", "theta5", "--s", "1"],
        vec!["eval", "--family", "theta3"],
        vec!["sweep", "--n", "2"],
        vec!["frobnicate"],
        vec![],
    ] {
        assert_eq!(bin(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

fn sweep_into(dir: &Path, name: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.join(name);
    let mut args = vec![
        "sweep", "--n", "2", "--beta-min", "0.4", "--beta-max", "1.4", "--steps", "101", "--out",
    ];
    args.push(out.to_str().unwrap());
    args.extend_from_slice(extra);
    (bin(&args), out)
}

#[test]
fn sweep_is_byte_identical_and_writes_only_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, a) = sweep_into(dir.path(), "a.csv", &[]);
    let (o2, b) = sweep_into(dir.path(), "b.csv", &[]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o2.status.code(), Some(0));
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.lines().count(), 102);
    assert_eq!(text.lines().next(), Some("beta,A,B,ratio"));
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 2);

    let svg = dir.path().join("plot.svg");
    let (o3, _) = sweep_into(dir.path(), "c.csv", &["--log", "--svg", svg.to_str().unwrap(), "--column", "A"]);
    assert_eq!(o3.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn sweep_out_of_window_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = bin(&[
        "sweep", "--n", "2", "--beta-min", "1e-5", "--beta-max", "1", "--steps", "10", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}
