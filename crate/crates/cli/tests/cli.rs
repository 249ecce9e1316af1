use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn epolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epolar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["family", "param", "delta", "ic_value", "lower_bound", "threshold_log2"]
    );
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn certificate_theorem1_spectrum() {
    let out = epolar(&["certificate", "theorem1", "--eta", "0.6", "--delta", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let spec: Vec<f64> = doc["xi_spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for (got, want) in spec.iter().zip([0.7, 0.225, 0.075, 0.0]) {
        assert!((got - want).abs() < 1e-10, "{spec:?}");
    }
    for key in ["eta", "delta", "h_xi", "h_out", "lower_bound", "ic_numeric"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn certificate_theorem2_positive_bound() {
    let out = epolar(&["certificate", "theorem2", "--p", "0.7,0.15,0.1,0.05", "--delta", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["lower_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn certificate_theorem2_hypothesis_failure() {
    let out = epolar(&["certificate", "theorem2", "--p", "0.5,0.5,0,0", "--delta", "0.01"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));
}

#[test]
fn certificate_argument_errors() {
    assert_eq!(epolar(&["certificate", "theorem1", "--eta", "0", "--delta", "0.1"]).status.code(), Some(2));
    assert_eq!(epolar(&["certificate", "theorem2", "--p", "0.5,0.5", "--delta", "0.1"]).status.code(), Some(2));
    assert_eq!(epolar(&["certificate", "theorem1", "--eta", "0.5"]).status.code(), Some(2));
}

#[test]
fn verify_default_and_failures() {
    let ok = epolar(&["verify"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert_eq!(stdout(&ok).lines().filter(|l| l.starts_with("PASS")).count(), 4);

    let strict = epolar(&["verify", "--spectra-tol", "1e-18"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("FAIL"));

    let fault = epolar(&["verify", "--inject-fault", "depolarizing-weight"]);
    assert_eq!(fault.status.code(), Some(1));
    assert!(stdout(&fault).contains("failed: Kraus completeness"));
}

#[test]
fn verify_json_reports() {
    let out = epolar(&["verify", "--json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let suites = doc.as_array().unwrap();
    assert_eq!(suites.len(), 4);
    for s in suites {
        assert_eq!(s["passed"], Value::Bool(true));
    }
}

#[test]
fn families_listing() {
    let out = epolar(&["families"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["depolarizing", "epolarizing", "erasure", "dephasing", "mixed-pauli", "amplitude-damping"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn sweep_epolarizing_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("epol.csv");
    let p = path.to_str().unwrap();
    let args = [
        "sweep", "--family", "epolarizing", "--min", "0.1", "--max", "1.0", "--steps", "10", "--delta", "threshold",
        "--output", p,
    ];
    assert_eq!(epolar(&args).status.code(), Some(0));
    let first = fs::read(&path).unwrap();
    let rows = csv_rows(std::str::from_utf8(&first).unwrap());
    assert_eq!(rows.len(), 10);
    for row in &rows {
        assert!(row[3].parse::<f64>().unwrap() > 0.0, "{row:?}");
        assert!(!row[4].is_empty() && !row[5].is_empty());
    }
    // Byte-identical on rerun.
    assert_eq!(epolar(&args).status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn sweep_erasure_optimize_is_zero() {
    let out = epolar(&["sweep", "--family", "erasure", "--min", "0.5", "--max", "1.0", "--steps", "6", "--delta", "optimize"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row[3].parse::<f64>().unwrap() <= 1e-9, "{row:?}");
    }
}

#[test]
fn sweep_single_point() {
    let out = epolar(&["sweep", "--family", "erasure", "--min", "0.5", "--max", "0.5", "--steps", "1", "--delta", "fixed:0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 0.5);
}

#[test]
fn sweep_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_out = dir.path().join("missing").join("x.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["sweep", "--family", "erasure", "--min", "0.5", "--max", "0.5", "--steps", "1", "--delta", "optimize", "-o", bad_out.to_str().unwrap()],
        vec!["sweep", "--family", "nope", "--min", "0.1", "--max", "0.5", "--steps", "2", "--delta", "optimize"],
        vec!["sweep", "--family", "erasure", "--min", "0.6", "--max", "0.5", "--steps", "2", "--delta", "optimize"],
        vec!["sweep", "--family", "erasure", "--min", "0.1", "--max", "0.5", "--steps", "0", "--delta", "optimize"],
        vec!["sweep", "--family", "erasure", "--min", "0.1", "--max", "0.5", "--steps", "2", "--delta", "fixed:3"],
        vec!["sweep", "--family", "erasure", "--min", "0.1", "--max", "0.5", "--steps", "2"],
    ];
    for args in cases {
        assert_eq!(epolar(&args).status.code(), Some(2), "{args:?}");
    }
}

const AMPLITUDE_DAMPING_03: &str = r#"{
  "d_in": 2,
  "d_out": 2,
  "kraus": [
    [[1, 0], [0, 0], [0, 0], [0.8366600265340756, 0]],
    [[0, 0], [0.5477225575051661, 0], [0, 0], [0, 0]]
  ]
}"#;

#[test]
fn channel_file_sweep_and_optimize() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ad.json");
    fs::write(&path, AMPLITUDE_DAMPING_03).unwrap();
    let p = path.to_str().unwrap();

    let out = epolar(&["sweep", "--channel-file", p, "--min", "0.1", "--max", "0.5", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], "ad");
    assert_eq!(rows[0][1], rows[0][2]);

    let out = epolar(&["optimize", "--channel-file", p, "--check-diagonal"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["value"].as_f64().unwrap() > 0.1);

    fs::write(&path, "{ \"d_in\": 2 }").unwrap();
    assert_eq!(epolar(&["optimize", "--channel-file", p]).status.code(), Some(2));
}

#[test]
fn optimize_family() {
    let out = epolar(&["optimize", "--family", "erasure", "--param", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((doc["value"].as_f64().unwrap() - 0.4).abs() < 1e-6);
    assert_eq!(epolar(&["optimize", "--family", "erasure"]).status.code(), Some(2));
}
