use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn monopath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monopath")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = monopath(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_birkhoff_has_nine_variables() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("b3.json");
    ok(&["gen", "birkhoff", "--n", "3", "-o", s(&f)]);
    let v = json(&f);
    assert_eq!(v["family"], "birkhoff");
    assert_eq!(v["num_vars"], 9);
    assert!(v["A"].as_array().unwrap().iter().all(|row| row.as_array().unwrap().len() == 9));
}

#[test]
fn longpath_tsp_eight_verifies() {
    let out = ok(&["longpath", "tsp", "--n", "8", "--verify"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified"], true);
    // L~_4 = 1, L~_5 = 3, L~_n = L~_{n-1} + L~_{n-2} + 2.
    let (mut a, mut b) = (1u64, 3u64);
    for _ in 6..=8 {
        (a, b) = (b, a + b + 2);
    }
    assert!(v["length"].as_u64().unwrap() >= b);
    assert_eq!(v["vertices"].as_array().unwrap().len() as u64, v["length"].as_u64().unwrap() + 1);
}

#[test]
fn longpath_sp_verifies() {
    let out = ok(&["longpath", "sp", "--n", "6", "--verify"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["family"], "shortest_path");
}

#[test]
fn bounds_on_birkhoff_are_satisfied() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("b3.json");
    ok(&["gen", "birkhoff", "--n", "3", "-o", s(&f)]);
    let out = ok(&["bounds", s(&f), "--rules", "dantzig,steepest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,family,rule,bound_name,bound,observed,satisfied"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.contains(",dantzig,")));
    assert!(rows.iter().any(|r| r.contains(",steepest,")));
    assert!(rows.iter().all(|r| r.ends_with(",true") && r.starts_with("b3,birkhoff,")));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("tp.json");
    ok(&["gen", "transportation", "--random-margins", "2x3", "--perturb", "--seed", "7", "-o", s(&inst)]);
    let again = dir.path().join("tp2.json");
    ok(&["gen", "transportation", "--random-margins", "2x3", "--perturb", "--seed", "7", "-o", s(&again)]);
    assert_eq!(fs::read(&inst).unwrap(), fs::read(&again).unwrap());
    let a = ok(&["bounds", s(&inst), "--seed", "11"]).stdout;
    let b = ok(&["bounds", s(&inst), "--seed", "11"]).stdout;
    assert_eq!(a, b);
    let t1 = dir.path().join("t1.json");
    let t2 = dir.path().join("t2.json");
    ok(&["solve", s(&inst), "--rule", "steepest", "--trace-out", s(&t1)]);
    ok(&["solve", s(&inst), "--rule", "steepest", "--trace-out", s(&t2)]);
    assert_eq!(fs::read(&t1).unwrap(), fs::read(&t2).unwrap());
}

#[test]
fn sweep_config_runs_in_parallel_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    fs::write(
        &cfg,
        r#"{"objectives": 1, "rules": ["dantzig", "steepest"],
            "instances": [{"family": "birkhoff", "params": {"n": 3}},
                          {"name": "sp4", "family": "shortest_path", "params": {"n": 4}}]}"#,
    )
    .unwrap();
    let o1 = dir.path().join("a.csv");
    let o2 = dir.path().join("b.csv");
    ok(&["sweep", s(&cfg), "-o", s(&o1)]);
    ok(&["sweep", s(&cfg), "-o", s(&o2)]);
    let text = fs::read_to_string(&o1).unwrap();
    assert_eq!(text, fs::read_to_string(&o2).unwrap());
    assert!(text.lines().any(|l| l.starts_with("birkhoff_0,birkhoff,dantzig,")));
    assert!(text.lines().any(|l| l.starts_with("sp4,shortest_path,steepest,")));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn trace_schema() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("km.json");
    ok(&["gen", "klee_minty", "--n", "3", "-o", s(&inst)]);
    let t = dir.path().join("t.json");
    ok(&["solve", s(&inst), "--rule", "bland", "--objective", "random", "--trace-out", s(&t)]);
    let v = json(&t);
    for key in ["instance", "rule", "start_basis", "steps", "distinct_bfs", "status"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["status"], "optimal");
    for step in v["steps"].as_array().unwrap() {
        for key in ["entering", "leaving", "theta", "objective"] {
            assert!(step.get(key).is_some(), "step misses {key}");
        }
    }
}

#[test]
fn analyze_cube() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("c.json");
    ok(&["gen", "cube", "--n", "3", "-o", s(&inst)]);
    let r = dir.path().join("r.json");
    ok(&["analyze", s(&inst), "--random", "8", "-o", s(&r)]);
    let v = json(&r);
    assert_eq!(v["vertices"], 8);
    assert_eq!(v["edges"], 12);
    assert_eq!(v["max_mono_diameter"], 3);
    assert_eq!(v["results"].as_array().unwrap().iter().filter(|x| x["label"].as_str().unwrap().starts_with("random")).count(), 8);
}

#[test]
fn usage_errors_exit_two() {
    let out = monopath(&["gen", "birkhoff", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
    let out = monopath(&["gen", "birkhoff"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
    let out = monopath(&["solve", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = monopath(&["longpath", "tsp", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vertex_limit_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("b4.json");
    ok(&["gen", "birkhoff", "--n", "4", "-o", s(&inst)]);
    let out = monopath(&["bounds", s(&inst), "--vertex-limit", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}
