use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const MIXED: &str = r#"{"n":1,"rho":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
const BELL: &str = r#"{"n":2,"rho":[[[0.5,0],[0,0],[0,0],[0.5,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0.5,0],[0,0],[0,0],[0.5,0]]]}"#;
const TILTED: &str = r#"{"n":2,"rho":[[[0.4,0],[0.1,0.05],[0,0],[0.05,0]],[[0.1,-0.05],[0.3,0],[0,0.02],[0,0]],[[0,0],[0,-0.02],[0.2,0],[0,0]],[[0.05,0],[0,0],[0,0],[0.1,0]]]}"#;

fn dwf(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dwf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = dwf(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn floats(v: &Value, key: &str) -> Vec<f64> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn compute_maximally_mixed_qubit() {
    assert_eq!(
        ok(&["compute", "--net", "0"], MIXED),
        "{\"n\":1,\"net\":0,\"w\":[0.25,0.25,0.25,0.25]}\n"
    );
}

#[test]
fn bell_state_reduces_to_uniform() {
    let w = ok(&["compute", "--net", "7"], BELL);
    let r: Value = serde_json::from_str(&ok(
        &["reduce", "--keep", "0", "--net-in", "7", "--net-out", "3"],
        &w,
    ))
    .unwrap();
    assert_eq!(r["n"], 1);
    assert_eq!(r["net"], 3);
    assert!(floats(&r, "w").iter().all(|x| (x - 0.25).abs() < 1e-15));
    let c: Value = serde_json::from_str(&ok(&["concurrence"], &w)).unwrap();
    assert!((c["concurrence"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn net_in_must_match() {
    let w = ok(&["compute", "--net", "7"], BELL);
    let out = dwf(
        &["reduce", "--keep", "0", "--net-in", "8", "--net-out", "3"],
        &w,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn atlas_flags_product_nets() {
    let atlas: Vec<Value> = serde_json::from_str(&ok(
        &["nets", "--n", "2", "--classify", "--detect-product"],
        "",
    ))
    .unwrap();
    assert_eq!(atlas.len(), 1024);
    let products = atlas.iter().filter(|e| e["product"] != "none").count();
    assert_eq!(products, 32);
    let eq6 = atlas.iter().filter(|e| e["product"] == "eq6").count();
    assert_eq!(eq6, 16);
    let mut orbits: Vec<u64> = atlas.iter().map(|e| e["orbit"].as_u64().unwrap()).collect();
    orbits.sort_unstable();
    orbits.dedup();
    assert_eq!(orbits.len(), 64);
    assert_eq!(atlas[1000]["digits"], serde_json::json!([3, 3, 2, 2, 0]));
}

#[test]
fn describe_and_sample() {
    assert_eq!(
        ok(&["nets", "--n", "2", "--describe", "1000"], ""),
        "{\"id\":1000,\"digits\":[3,3,2,2,0]}\n"
    );
    let sample: Vec<Value> = serde_json::from_str(&ok(
        &["nets", "--n", "3", "--sample", "5", "--seed", "9"],
        "",
    ))
    .unwrap();
    assert_eq!(sample.len(), 5);
    assert_eq!(dwf(&["nets", "--n", "3"], "").status.code(), Some(2));
}

#[test]
fn validation_errors_exit_2() {
    let bad_trace = r#"{"n":1,"rho":[[[0.5,0],[0,0]],[[0,0],[0.4,0]]]}"#;
    assert_eq!(
        dwf(&["compute", "--net", "0"], bad_trace).status.code(),
        Some(2)
    );
    assert_eq!(
        dwf(
            &["compute", "--net", "0"],
            &MIXED.replace("\"n\":1", "\"n\":2")
        )
        .status
        .code(),
        Some(2)
    );
    let missing = dwf(&["compute", "--net", "0"], r#"{"n":1}"#);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("rho"));
    assert_eq!(
        dwf(&["compute", "--net", "0"], "{not json").status.code(),
        Some(2)
    );
    assert_eq!(
        dwf(&["compute", "--net", "8"], MIXED).status.code(),
        Some(2)
    );
    assert_eq!(
        dwf(&["verify", "--suite", "nope"], "").status.code(),
        Some(2)
    );
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (state, w, back) = (
        dir.path().join("rho.json"),
        dir.path().join("w.json"),
        dir.path().join("back.json"),
    );
    std::fs::write(&state, TILTED).unwrap();
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    ok(
        &["compute", "--net", "555", "-i", &p(&state), "-o", &p(&w)],
        "",
    );
    ok(&["to-rho", "-i", &p(&w), "-o", &p(&back)], "");
    let a: Value = serde_json::from_str(TILTED).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    let flat = |v: &Value| -> Vec<f64> {
        v["rho"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|r| {
                r.as_array()
                    .unwrap()
                    .iter()
                    .flat_map(|z| z.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
            })
            .collect()
    };
    let diff = flat(&a)
        .iter()
        .zip(flat(&b))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!(diff < 1e-15, "{diff}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["compute", "--net", "321"];
    assert_eq!(ok(&args, TILTED), ok(&args, TILTED));
    assert_eq!(
        ok(&["verify", "--n", "1"], ""),
        ok(&["verify", "--n", "1"], "")
    );
}

#[test]
fn stokes_paths_agree() {
    let direct: Value = serde_json::from_str(&ok(&["stokes"], TILTED)).unwrap();
    let via: Value =
        serde_json::from_str(&ok(&["stokes"], &ok(&["compute", "--net", "77"], TILTED))).unwrap();
    let (a, b) = (floats(&direct, "s"), floats(&via, "s"));
    assert_eq!(a.len(), 16);
    assert!((a[0] - 1.0).abs() < 1e-15);
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
}

#[test]
fn flips_are_involutions_and_conversion_inverts() {
    let w = ok(&["compute", "--net", "42"], TILTED);
    let orig: Value = serde_json::from_str(&w).unwrap();
    for cmd in ["spinflip", "conjugate"] {
        let twice: Value = serde_json::from_str(&ok(&[cmd], &ok(&[cmd], &w))).unwrap();
        let d = floats(&orig, "w")
            .iter()
            .zip(floats(&twice, "w"))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(d < 1e-12);
    }
    let there = ok(&["convert", "--net-out", "900"], &w);
    let back: Value = serde_json::from_str(&ok(&["convert", "--net-out", "42"], &there)).unwrap();
    assert_eq!(back["net"], 42);
    let d = floats(&orig, "w")
        .iter()
        .zip(floats(&back, "w"))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!(d < 1e-12);
}

#[test]
fn verify_reports_counts() {
    let report = ok(&["verify", "--suite", "all", "--n", "2"], "");
    assert!(report.lines().filter(|l| l.starts_with("PASS")).count() >= 11);
    assert!(report.contains("summary: 11 passed, 0 failed"));
}
