//! End-to-end runs of the `qwalk` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&qwalk(&all))).unwrap()
}

#[test]
fn identical_configs_give_identical_bytes() {
    for args in [
        &["sameside", "--t-max", "40"][..],
        &["bell", "--t-max", "25", "--format", "json"],
        &["scan", "--t-max", "12", "--grid", "3"],
        &["asymptote", "--grid", "21", "--format", "json"],
    ] {
        assert_eq!(qwalk(args).stdout, qwalk(args).stdout, "{args:?}");
    }
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let csv = stdout(&qwalk(&["single", "--t-max", "30", "--initial", "sym"]));
    let report = json(&["single", "--t-max", "30", "--initial", "sym"]);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let records = report["records"].as_array().unwrap();
    for (line, record) in lines.zip(records) {
        for (name, cell) in header.iter().zip(line.split(',')) {
            assert_eq!(record[*name].to_string(), cell, "{name}");
        }
    }
    assert_eq!(records.len(), 31);
}

#[test]
fn json_layout() {
    let report = json(&["sameside", "--t-max", "5"]);
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["config", "records", "summary"]);
    assert_eq!(report["config"]["experiment"], "sameside");
    assert!(report["summary"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn sameside_at_time_zero_is_certain() {
    let report = json(&["sameside", "--t-max", "0"]);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0]["p_sameside"].as_f64(), Some(1.0));
}

#[test]
fn separable_asymptote_is_five_eighths() {
    let report = json(&["sameside", "--t-max", "10", "--initial", "L"]);
    let limit = report["summary"]["asymptote"].as_f64().unwrap();
    assert!((limit - 0.625).abs() < 1e-12);
    let report = json(&["asymptote", "--grid", "11"]);
    assert!((report["summary"]["sameside_limit"].as_f64().unwrap() - 0.625).abs() < 1e-12);
}

#[test]
fn fourier_check_meets_tolerance() {
    let report = json(&["fourier-check", "--t-max", "50", "--grid", "256"]);
    let max_error = report["summary"]["max_error"].as_f64().unwrap();
    assert!(max_error <= 1e-10, "{max_error}");
    for record in report["records"].as_array().unwrap() {
        assert!(record["max_error"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# comment\nexperiment = single\nt_max = 5\ninitial = R\n").unwrap();
    let path = path.to_str().unwrap();
    let csv = stdout(&qwalk(&["single", "--config", path]));
    assert_eq!(csv.lines().count(), 7);
    let csv = stdout(&qwalk(&["single", "--config", path, "--t-max", "10"]));
    assert_eq!(csv.lines().count(), 12);
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = qwalk(&["indist", "--t-max", "6", "--format", "json", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    assert!(run.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["records"].as_array().unwrap().len(), 7);
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["nonsense"][..],
        &["delta", "--m", "4"],
        &["single", "--t-max", "-3"],
        &["single", "--initial", "vec:1,1"],
        &["fourier-check", "--t-max", "50", "--grid", "64"],
        &["single", "--format", "xml"],
        &["single", "--config", "/nonexistent/qwalk.cfg"],
    ] {
        let out = qwalk(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unknown_file_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "experiment = single\nsteps = 5\n").unwrap();
    let out = qwalk(&["single", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
