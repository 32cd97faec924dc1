use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lcauchy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcauchy")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p.display().to_string()
}

const CHAIN: &str = r#"{"labels":["a","b","c"],"dist":[[0,1,2],[0,0,1],[0,0,0]],"causal":[[1,1,1],[0,1,1],[0,0,1]]}"#;

#[test]
fn causal_cycle_exits_2_with_antisymmetry_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cycle = write(dir.path(), "cycle.json", r#"{"labels":["a","b"],"dist":[0,0,0,0],"causal":[1,1,1,1]}"#);
    let out = lcauchy(&["space", "check", "--space", &cycle]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["witnesses"][0]["invariant"], "antisymmetry");
    assert_eq!(r["witnesses"][0]["indices"], serde_json::json!([0, 1]));

    let out = lcauchy(&["space", "check", "--allow-acausal", "--space", &cycle]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(lcauchy(&["dj", "pair", "--model", "strip", "--a", "x"]).status.code(), Some(3));
    assert_eq!(lcauchy(&["space", "check", "--space", "/nonexistent.json"]).status.code(), Some(3));
    assert_eq!(lcauchy(&["--tol", "-1", "complete", "strip"]).status.code(), Some(3));
    assert_eq!(lcauchy(&["--help"]).status.code(), Some(0));
}

#[test]
fn timefn_build_writes_tau_table() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "chain.json", CHAIN);
    let out_dir = dir.path().join("out");
    let out = lcauchy(&["--out", out_dir.to_str().unwrap(), "timefn", "build", "--space", &space]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let csv = fs::read_to_string(out_dir.join("tau.csv")).unwrap();
    let b: Vec<&str> = csv.lines().find(|l| l.starts_with("b,")).unwrap().split(',').collect();
    assert!((b[3].parse::<f64>().unwrap() - 4f64.ln()).abs() < 1e-12);
    assert!(csv.contains("a,0.0,") && csv.lines().nth(1).unwrap().ends_with("-inf"));
    assert!(out_dir.join("timefn-build.json").exists());

    let out = lcauchy(&["timefn", "build", "--space", &space, "--enumeration", "c", "--enumeration", "b", "--enumeration", "a"]);
    let tau = &report(&out)["verdicts"][0]["value"]["tau"];
    assert!((tau[1].as_f64().unwrap() + 4f64.ln()).abs() < 1e-12, "{tau}");
}

#[test]
fn same_seed_same_report() {
    let strip = |seed: &str| {
        let mut r = report(&lcauchy(&["--seed", seed, "dj", "axioms", "--count", "6", "--trials", "20", "--resolution", "2"]));
        r["timing"] = Value::Null;
        r
    };
    assert_eq!(strip("11"), strip("11"));
    assert_ne!(strip("11")["verdicts"], strip("12")["verdicts"]);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "seed = 9\n[dj-pair]\nmodel = \"minkowski\"\na = 0.25\nb = 1.0\n");
    let r = report(&lcauchy(&["--config", &cfg, "dj", "pair", "--b", "0.5"]));
    assert_eq!(r["config"]["seed"], 9);
    assert_eq!(r["config"]["args"]["model"], "minkowski");
    assert_eq!(r["verdicts"][0]["value"], 0.25);
}

#[test]
fn graph_validation_flags_lipschitz_violations() {
    let dir = tempfile::tempdir().unwrap();
    let mesh_dir = dir.path().display().to_string();
    assert!(lcauchy(&["--out", &mesh_dir, "mesh", "build", "--resolution", "2"]).status.success());
    let mesh: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("mesh.json")).unwrap()).unwrap();
    let n = mesh["vertices"].as_array().unwrap().len();

    let flat = write(dir.path(), "flat.json", &serde_json::json!({"mesh": "mesh.json", "f": vec![1.0; n]}).to_string());
    let out = lcauchy(&["graph", "validate", "--graph", &flat]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let mut f = vec![1.0; n];
    f[0] = 50.0;
    let spike = write(dir.path(), "spike.json", &serde_json::json!({"mesh": "mesh.json", "f": f}).to_string());
    let out = lcauchy(&["graph", "validate", "--graph", &spike]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["witnesses"][0]["invariant"], "lipschitz");

    let out = lcauchy(&["dj", "pair", "--model", "cone", "--graph-a", &flat, "--graph-b", &flat]);
    assert_eq!(report(&out)["verdicts"][0]["value"], 0.0);
}

#[test]
fn report_summarizes_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().display().to_string();
    assert!(lcauchy(&["--out", &d, "complete", "strip"]).status.success());
    let space = write(dir.path(), "chain.json", CHAIN);
    assert!(lcauchy(&["--out", &d, "complete", "finite", "--space", &space]).status.success());
    let a = dir.path().join("complete-strip.json").display().to_string();
    let b = dir.path().join("complete-finite.json").display().to_string();
    let out = lcauchy(&["--out", &d, "report", &a, &b]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    assert!(text.contains("complete strip") && text.contains("9/9"), "{text}");
}
