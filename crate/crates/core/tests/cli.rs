use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn qgft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgft")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn function(dir: &Path, name: &str, re: &[f64]) -> String {
    let values: Vec<[f64; 2]> = re.iter().map(|&x| [x, 0.0]).collect();
    write(dir, name, &json!({ "values": values })).display().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn real_parts(v: &Value) -> Vec<f64> {
    v["values"].as_array().unwrap().iter().map(|z| z[0].as_f64().unwrap()).collect()
}

fn assert_close(got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-10, "{got:?} vs {want:?}");
    }
}

#[test]
fn fourier_of_a_function_on_z3() {
    let dir = tempfile::tempdir().unwrap();
    let a = function(dir.path(), "a.json", &[1.0, 2.0, 3.0]);
    let out = qgft(&["fourier", "--group", "cyclic:3", "--function", &a]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_close(&real_parts(&v["function"]), &[1.0, 2.0, 3.0]);
    assert_eq!(v["matrix"]["n"], 3);
    // column 0 of L_a is a itself
    let re = v["matrix"]["re"].as_array().unwrap();
    let column: Vec<f64> = re.iter().map(|row| row[0].as_f64().unwrap()).collect();
    assert_close(&column, &[1.0, 2.0, 3.0]);

    let inv = qgft(&["fourier", "--group", "cyclic:3", "--function", &a, "--inverse"]);
    assert!(inv.status.success());
    assert_close(&real_parts(&stdout_json(&inv)["function"]), &[1.0, 2.0, 3.0]);
}

#[test]
fn convolve_on_z2_both_sides() {
    let dir = tempfile::tempdir().unwrap();
    let a = function(dir.path(), "a.json", &[1.0, 2.0]);
    let c = function(dir.path(), "c.json", &[3.0, 4.0]);
    let out = qgft(&["convolve", "--group", "cyclic:2", "--a", &a, "--c", &c]);
    assert!(out.status.success());
    assert_close(&real_parts(&stdout_json(&out)), &[11.0, 10.0]);

    let out = qgft(&["convolve", "--group", "cyclic:2", "--a", &a, "--c", &c, "--dual"]);
    assert!(out.status.success());
    assert_close(&real_parts(&stdout_json(&out)), &[3.0, 8.0]);
}

#[test]
fn pair_agrees_on_every_route() {
    let dir = tempfile::tempdir().unwrap();
    let a = function(dir.path(), "a.json", &[1.0, 2.0]);
    let b = function(dir.path(), "b.json", &[3.0, 4.0]);
    let out = qgft(&["pair", "--group", "cyclic:2", "--a", &a, "--b", &b]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    for key in ["via_inverse", "via_forward", "via_w", "sum"] {
        assert!((v[key][0].as_f64().unwrap() - 11.0).abs() < 1e-10, "{key}");
    }
}

#[test]
fn dft_compare_on_z2_and_nonabelian() {
    let dir = tempfile::tempdir().unwrap();
    let a = function(dir.path(), "a.json", &[1.0, 2.0]);
    let out = qgft(&["dft-compare", "--group", "cyclic:2", "--function", &a]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    let diag: Vec<f64> = v["diagonal"].as_array().unwrap().iter().map(|z| z[0].as_f64().unwrap()).collect();
    assert_close(&diag, &[3.0, -1.0]);

    let six = function(dir.path(), "six.json", &[1.0; 6]);
    assert_eq!(qgft(&["dft-compare", "--group", "s3", "--function", &six]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let short = function(dir.path(), "short.json", &[1.0, 2.0]);
    assert_eq!(
        qgft(&["fourier", "--group", "cyclic:3", "--function", &short]).status.code(),
        Some(2)
    );
    assert_eq!(qgft(&["verify", "--group", "no-such-group"]).status.code(), Some(2));
    let garbage = write(dir.path(), "garbage.json", &json!({ "values": "nope" }));
    let out = qgft(&["fourier", "--group", "cyclic:2", "--function", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (r1, r2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    for r in [&r1, &r2] {
        let out = qgft(&[
            "verify",
            "--group",
            "dihedral:3",
            "--seed",
            "7",
            "--deterministic",
            "--out",
            r.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    let report: Value = serde_json::from_slice(&std::fs::read(&r1).unwrap()).unwrap();
    assert_eq!(report["seed"], 7);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true && c["elapsed_ms"] == 0.0));
}

#[test]
fn verify_accepts_a_cayley_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = json!({ "order": 4, "table": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]] });
    let path = write(dir.path(), "klein.json", &table);
    let out = qgft(&["verify", "--group", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().any(|c| c["name"] == "dft_oracle"));

    let bad = json!({ "order": 2, "table": [[0, 1], [1, 1]] });
    let path = write(dir.path(), "bad.json", &bad);
    assert_eq!(qgft(&["verify", "--group", path.to_str().unwrap()]).status.code(), Some(2));
}
