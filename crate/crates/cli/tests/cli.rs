use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::{Draft, JSONSchema};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heis-slor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn schema() -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.json");
    let raw: Value =
        serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema is JSON");
    JSONSchema::options()
        .with_draft(Draft::Draft7)
        .compile(&raw)
        .expect("schema compiles")
}

fn validated(args: &[&str]) -> Value {
    let doc: Value = serde_json::from_str(&stdout(args)).expect("JSON output");
    let schema = schema();
    if let Err(errors) = schema.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    doc
}

#[test]
fn tau_of_straight_segment() {
    assert_eq!(stdout(&["tau", "0", "0", "0", "2", "0", "0"]), "2.0\n");
    let doc = validated(&["tau", "0", "0", "0", "2", "0", "0", "--format", "json"]);
    assert_eq!(doc["tau"], 2.0);
    assert_eq!(stdout(&["tau", "0", "0", "0", "-2", "0", "0"]), "0.0\n");
}

#[test]
fn iso_solve_broken_null() {
    let doc = validated(&["iso-solve", "2", "0", "1"]);
    assert_eq!(doc["case"], "broken_null");
    assert_eq!(doc["max_length"], 0.0);
    let doc = validated(&["iso-solve", "3", "1", "-0.5", "--samples", "11"]);
    assert_eq!(doc["case"], "hyperbola");
    assert_eq!(doc["curve"].as_array().unwrap().len(), 11);
}

#[test]
fn diamond_volume_constant() {
    let doc = validated(&[
        "diamond-volume",
        "0",
        "0",
        "0",
        "1",
        "0",
        "0",
        "--mc",
        "1000000",
        "--seed",
        "7",
    ]);
    let closed = doc["closed"].as_f64().unwrap();
    assert!((closed - 0.012_071_698_784_996_58).abs() < 1e-12);
    let mc = doc["mc"].as_f64().unwrap();
    let stderr = doc["stderr"].as_f64().unwrap();
    assert!((mc - closed).abs() <= 3.0 * stderr);
}

#[test]
fn every_json_report_validates() {
    validated(&[
        "geodesic",
        "0",
        "0",
        "0",
        "2",
        "0.5",
        "-0.3",
        "--format",
        "json",
        "--samples",
        "5",
    ]);
    validated(&["geodesic", "0", "0", "0", "2", "0", "1", "--format", "json"]);
    validated(&["diamond-volume", "1", "2", "3", "0", "0", "0"]);
    let doc = validated(&[
        "diamond-box",
        "0",
        "0",
        "0",
        "1",
        "0.2",
        "0.05",
        "--samples",
        "2000",
        "--seed",
        "3",
    ]);
    assert_eq!(doc["inclusion_pass"], true);
    let doc = validated(&["curvature-check"]);
    assert!((doc["midpoint_det"].as_f64().unwrap() - 1.0 / 32.0).abs() < 1e-4);
    assert_eq!(doc["contradiction"], true);
    assert_eq!(doc["tmcp_witnesses"].as_array().unwrap().len(), 12);
    let doc = validated(&["curvature-check", "--t", "0.5", "--N", "5", "--wmax", "100"]);
    assert_eq!(doc["tmcp_witnesses"][0]["conclusive"], true);
    validated(&["hausdorff", "--format", "json", "--radius", "2", "--delta", "0.5"]);
}

#[test]
fn geodesic_csv_columns() {
    let text = stdout(&["geodesic", "0", "0", "0", "2", "0.5", "-0.3", "--samples", "5"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x,y,z");
    assert_eq!(lines.len(), 6);
    let last: Vec<f64> = lines[5].split(',').map(|s| s.parse().unwrap()).collect();
    assert!((last[1] - 2.0).abs() < 1e-12 && (last[2] - 0.5).abs() < 1e-12 && (last[3] + 0.3).abs() < 1e-12);
}

#[test]
fn hausdorff_csv_reports_trends() {
    let text = stdout(&[
        "hausdorff",
        "--center",
        "1",
        "-2",
        "0.5",
        "--radius",
        "1",
        "--delta",
        "0.1",
    ]);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("delta,role,net_size,lower,upper"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let lower: f64 = row[3].parse().unwrap();
        let upper: f64 = row[4].parse().unwrap();
        assert!(lower <= upper);
        assert_eq!(&row[7..], &["grows", "shrinks", "shrinks"]);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "diamond-volume",
        "0",
        "0",
        "0",
        "1.5",
        "0.2",
        "0.1",
        "--mc",
        "200000",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    let single = bin().args(args).env("HEIS_SLOR_THREADS", "1").output().unwrap();
    let many = bin().args(args).env("HEIS_SLOR_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, single.stdout);
    assert_eq!(a.stdout, many.stdout);
    let other = run(&[
        "diamond-volume",
        "0",
        "0",
        "0",
        "1.5",
        "0.2",
        "0.1",
        "--mc",
        "200000",
        "--seed",
        "12",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("heis-slor-cli-{}.json", std::process::id()));
    let out = run(&["iso-solve", "2", "0", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, stdout(&["iso-solve", "2", "0", "1"]));
}

#[test]
fn exit_codes() {
    // Domain errors.
    assert_eq!(run(&["iso-solve", "1", "0", "5"]).status.code(), Some(1));
    assert_eq!(run(&["geodesic", "0", "0", "0", "-1", "0", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["diamond-box", "0", "0", "0", "0", "1", "0"]).status.code(),
        Some(1)
    );
    // Usage errors.
    assert_eq!(
        run(&["tau", "0", "0", "0", "1", "0", "0", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["tau", "0", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["curvature-check", "--t", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["curvature-check", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(
        run(&["hausdorff", "--radius", "1", "--delta", "0.9"]).status.code(),
        Some(2)
    );
    let out = bin()
        .args(["tau", "0", "0", "0", "1", "0", "0"])
        .env("HEIS_SLOR_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["tau", "0", "0", "0", "1", "0", "0", "--bogus"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}
