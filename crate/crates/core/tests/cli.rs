use std::process::{Command, Output};

use serde_json::Value;

fn bw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselwell"))
        .args(args)
        .env_remove("BESSELWELL_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = bw(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn assert_rectangular(csv: &str) -> Vec<Vec<String>> {
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
    let rows: Vec<Vec<String>> = csv.lines().map(|l| l.split(',').map(String::from).collect()).collect();
    let width = rows[0].len();
    for r in &rows {
        assert_eq!(r.len(), width, "row {r:?}");
    }
    for r in &rows[1..] {
        for cell in r {
            assert!(!cell.contains('"'));
        }
    }
    rows
}

#[test]
fn spectrum_json_schema() {
    let doc = json(&["spectrum", "--family", "v5", "--v0", "50", "--a", "1", "--n", "2"]);
    assert_eq!(doc["family"], "v5");
    assert_eq!(doc["v0"], 50.0);
    assert_eq!(doc["a"], 1.0);
    let levels = doc["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    for l in levels {
        for key in ["E", "parity", "condition", "residual", "bracket", "physical"] {
            assert!(l.get(key).is_some(), "missing {key}");
        }
    }
    assert_eq!(format!("{:.3}", levels[0]["E"].as_f64().unwrap()), "18.611");
    assert_eq!(format!("{:.3}", levels[1]["E"].as_f64().unwrap()), "37.263");
    assert_eq!(levels[0]["condition"], "J_PRIME_ZERO");
    assert_eq!(levels[1]["parity"], "odd");
    assert!(doc["meta"]["tolerances"]["residual"].is_f64());
}

#[test]
fn scatter_csv_contract() {
    let o = bw(&["scatter", "--family", "v4", "--v0", "50", "--a", "1", "--emin", "1", "--emax", "49", "--steps", "10", "--format", "csv"]);
    assert!(o.status.success());
    let rows = assert_rectangular(&stdout(&o));
    assert_eq!(rows[0].join(","), "E,ReA,ImA,ReB,ImB,R,T");
    assert_eq!(rows.len(), 11);
    for r in &rows[1..] {
        let v: Vec<f64> = r.iter().map(|c| c.parse().unwrap()).collect();
        assert!((v[5] + v[6] - 1.0).abs() < 1e-8);
    }
}

#[test]
fn csv_outputs_are_rectangular() {
    for args in [
        vec!["spectrum", "--family", "v1", "--v0", "5"],
        vec!["spectrum", "--family", "v4", "--v0", "50", "--nonphysical"],
        vec!["wavefunction", "--family", "v3", "--v0", "50", "--points", "101"],
        vec!["transfer", "--v0", "50", "--energy", "7"],
        vec!["poles", "--family", "v2", "--v0", "50", "--flip-sign"],
        vec!["moments", "--family", "v4", "--v0", "50", "--observable", "x", "--power", "2", "--cutoff", "3"],
    ] {
        let o = bw(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_rectangular(&stdout(&o));
    }
}

#[test]
fn json_outputs_parse() {
    let w = json(&["wavefunction", "--family", "v5", "--v0", "50", "--points", "11"]);
    assert_eq!(w["x"].as_array().unwrap().len(), 11);
    assert_eq!(w["psi"].as_array().unwrap().len(), 11);
    let t = json(&["transfer", "--v0", "50", "--level", "1"]);
    assert!((t["det"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let s = json(&["scatter", "--family", "v2", "--v0", "5", "--emin", "1", "--emax", "2", "--steps", "3"]);
    assert_eq!(s["points"].as_array().unwrap().len(), 3);
    let c = json(&["cubic", "--n", "1"]);
    assert_eq!(c["levels"].as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--family", "v1", "--v0", "5", "--format", "json"];
    let a = bw(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_besselwell"))
        .args(args)
        .env("BESSELWELL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v = bw(&[&args[..], &["--verbose"]].concat());
    assert_eq!(a.stdout, v.stdout);
    assert!(String::from_utf8_lossy(&v.stderr).contains("besselwell "));
}

#[test]
fn exit_codes() {
    assert_eq!(bw(&["spectrum", "--family", "v5", "--v0", "-1"]).status.code(), Some(2));
    assert_eq!(bw(&["spectrum", "--family", "v7", "--v0", "1"]).status.code(), Some(2));
    assert_eq!(bw(&["spectrum", "--family", "v5", "--v0", "50", "--bogus"]).status.code(), Some(2));
    assert_eq!(bw(&["scatter", "--family", "v4", "--v0", "50", "--emin", "5", "--emax", "1"]).status.code(), Some(2));
    assert_eq!(bw(&["poles", "--family", "v4", "--v0", "5"]).status.code(), Some(2));
    // a valid request the numerics cannot satisfy
    let o = bw(&["wavefunction", "--family", "v5", "--v0", "50", "--level", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.trim().lines().count(), 1, "{err}");
    assert_eq!(bw(&["--help"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_besselwell"))
        .args(["cubic", "--n", "1"])
        .env("BESSELWELL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("bw_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# well\nfamily = v5\nv0 = 50\nn = 2\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = json(&["--config", cfg, "spectrum"]);
    assert_eq!(from_file["levels"].as_array().unwrap().len(), 2);
    let overridden = json(&["--config", cfg, "spectrum", "--n", "1"]);
    assert_eq!(overridden["levels"].as_array().unwrap().len(), 1);
    let out = dir.join("levels.csv");
    let o = bw(&["--config", cfg, "spectrum", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("E,parity,condition"));
    assert_eq!(bw(&["--config", "/nonexistent/x.cfg", "spectrum"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn validate_reports_every_check() {
    let o = bw(&["validate", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let total = doc["total"].as_u64().unwrap();
    assert_eq!(doc["checks"].as_array().unwrap().len() as u64, total);
    assert_eq!(o.status.success(), doc["passed"] == doc["total"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("checks passed"));
}
