use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hochhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochhom"))
        .args(args)
        .env_remove("HOCHHOM_BUDGET")
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn dims(v: &Value) -> Vec<usize> {
    serde_json::from_value(v["result"]["dims"].clone()).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(o) => {
                o.remove("elapsed_ms");
                o.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

#[test]
fn homology_job_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let cfg = write_config(
        dir.path(),
        "job.json",
        &format!(
            r#"{{"command":"homology","algebra":"truncated_poly(2)","space":"sphere(1)","N":4,"output":{:?}}}"#,
            out.to_str().unwrap()
        ),
    );
    let o = hochhom(&[&cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["command"], "homology");
    assert_eq!(report["status"], "ok");
    assert_eq!(report["result"]["dims"], serde_json::json!([2, 1, 1, 1, 1]));
    assert_eq!(report["result"]["certified"][4], false);

    // same job, same bytes apart from timing
    let o2 = hochhom(&[&cfg]);
    assert_eq!(o2.status.code(), Some(0));
    let again: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(without_timing(report), without_timing(again));
}

#[test]
fn graded_and_cohomology_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "graded.json",
        r#"{"command":"graded-homology","algebra":{"type":"graded_poly","vars":[1]},"space":"sphere(2)","N":5,"weight":2}"#,
    );
    let o = hochhom(&[&cfg]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(dims(&v)[..5], [1, 0, 1, 0, 1]);

    let cfg = write_config(
        dir.path(),
        "coh.json",
        r#"{"command":"cohomology","algebra":"truncated_poly(2)","space":"sphere(1)","N":4,"module":"augmentation"}"#,
    );
    let o = hochhom(&[&cfg]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(dims(&v)[..4], [1, 1, 1, 1]);
    assert_eq!(v["result"]["coefficients"], "augmentation");
}

#[test]
fn verify_subcommand_passes_and_fails() {
    let o = hochhom(&["verify", "low_degree"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "pass");
    assert_eq!(v["result"]["cases"].as_array().unwrap().len(), 12);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hodge.txt");
    let o = hochhom(&["verify", "hodge_cohomology", "--format", "text", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("[Fail]"));
    assert!(text.contains("[Pass]"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.json", r#"{"command":"homology","algebra":"ground_field","N":2}"#);
    let o = hochhom(&[&cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(".space"));

    let cfg = write_config(dir.path(), "broken.json", "{ not json");
    assert_eq!(hochhom(&[&cfg]).status.code(), Some(2));
    assert_eq!(hochhom(&[dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hochhom(&["verify", "no_such_suite"]).status.code(), Some(2));

    let cfg = write_config(
        dir.path(),
        "disconnected.json",
        r#"{"command":"verify","suite":"localization","space":"disjoint(point,point)"}"#,
    );
    let o = hochhom(&[&cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("connected"));
}

#[test]
fn budget_overflow_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // caught while parsing: the raw complex size is known up front
    let cfg = write_config(
        dir.path(),
        "raw.json",
        r#"{"command":"homology","algebra":"truncated_poly(4)","space":"sphere(3)","N":8,"normalized":false,"budget":100000}"#,
    );
    assert_eq!(hochhom(&[&cfg]).status.code(), Some(3));
    // caught while building the normalized complex
    let cfg = write_config(
        dir.path(),
        "norm.json",
        r#"{"command":"homology","algebra":"truncated_poly(4)","space":"sphere(3)","N":8,"budget":100000}"#,
    );
    assert_eq!(hochhom(&[&cfg]).status.code(), Some(3));
}

#[test]
fn environment_overrides_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "job.json",
        r#"{"command":"homology","algebra":"truncated_poly(2)","space":"sphere(1)","N":4,"budget":1}"#,
    );
    let o = Command::new(env!("CARGO_BIN_EXE_hochhom"))
        .arg(&cfg)
        .env("HOCHHOM_BUDGET", "100000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(hochhom(&[&cfg]).status.code(), Some(3));
}
