use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn x0plus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_x0plus"))
        .arg("--data-dir")
        .arg(data_dir())
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = x0plus(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn levels_by_genus() {
    let v = json(&["levels", "--genus", "3"]);
    let levels: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|p| p["level"].as_u64().unwrap()).collect();
    assert_eq!(levels, [97, 109, 113, 127, 139, 149, 151, 179, 239]);
    let v = json(&["levels", "--genus", "4"]);
    assert_eq!(v["levels"].as_array().unwrap().len(), 5);
    assert_eq!(v["schema"], "x0plus/1");
}

#[test]
fn composite_level_is_rejected() {
    let out = x0plus(&["report", "91"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("[arith/level]") && err.contains("91 is not prime"), "{err}");
    assert!(err.contains("hint:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_fixture_names_the_stage() {
    let out = Command::new(env!("CARGO_BIN_EXE_x0plus"))
        .args(["--data-dir", "/nonexistent", "model", "97"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("[ingest/load fixture]") && err.contains("--data-dir"), "{err}");
}

#[test]
fn sweep_needs_genus_four() {
    let out = x0plus(&["incidence", "97", "--sweep", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[precondition/incidence]"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["report", "97", "--height", "30", "--format", "json"];
    let a = x0plus(&args);
    let b = x0plus(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], "report");
    assert_eq!(v["points"]["points"].as_array().unwrap().len(), 10);
    assert_eq!(v["incidence"]["kind"], "line");
    assert_eq!(v["incidence"]["fully_rational"].as_array().unwrap().len(), 7);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.json");
    let out = x0plus(&["points", "137", "--height", "20", "--format", "json", "-o", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, x0plus(&["points", "137", "--height", "20", "--format", "json"]).stdout);
}

#[test]
fn level_137_in_published_coordinates() {
    let v = json(&["report", "137", "--height", "30"]);
    let frame = &v["incidence"]["published"];
    let normals: Vec<Value> =
        frame["planes"].as_array().unwrap().iter().map(|p| p["published"]["normal"].clone()).collect();
    for n in [[0, 0, 0, 1], [1, 1, 2, 3], [0, 1, 1, 3], [0, 0, 1, 2]] {
        assert!(normals.contains(&serde_json::json!(n)), "{n:?} missing from {normals:?}");
    }
    let exceptional = frame["points"].as_array().unwrap().iter().find(|p| p["label"] == "exceptional").unwrap();
    assert_eq!(exceptional["published"], serde_json::json!([19, 2, -16, 4]));
    assert_eq!(v["incidence"]["exceptional"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_reports_the_failing_claims() {
    let out = x0plus(&["verify", "--paper-137", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["planes-exhaustive", "lines-exhaustive"]);
    let text = x0plus(&["verify", "--paper-137"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("8 of 10 claims hold"));
}
