use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn arcseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcseed")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_quiver(dir: &Path, rows: Value) -> String {
    let n = rows.as_array().unwrap().len();
    let p = dir.join("q.json");
    fs::write(&p, json!({ "n": n, "b": rows }).to_string()).unwrap();
    p.to_str().unwrap().to_string()
}

fn b3(dir: &Path) -> String {
    write_quiver(dir, json!([[0, 2, 2], [-2, 0, 2], [-2, -2, 0]]))
}

#[test]
fn conversions() {
    let out = arcseed(&["arc2refl", "--crossings", "2", "--endpoint", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), json!([2, 3, 2]));

    let out = arcseed(&["refl2arc", "--word", "3,1,2,3,4,3,2,1,3"]);
    assert_eq!(stdout_json(&out), json!({"crossings": [3, 1, 2, 3], "endpoint": 4}));

    let out = arcseed(&["arc2refl", "--endpoint", "5"]);
    assert_eq!(stdout_json(&out), json!([5]));
}

#[test]
fn schur_reports_both_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let q = b3(dir.path());
    let out = arcseed(&["schur", "--word", "1,2,1", "--quiver", &q]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out), json!({"embeddable": true, "search": {"found": true, "path": [1]}}));

    let out = arcseed(&["schur", "--word", "2,1,3,1,2", "--quiver", &q, "--depth", "6", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out), json!({"embeddable": false, "search": {"found": false, "depth": 6}}));

    let out = arcseed(&["schur", "--root", "2,1,0", "--quiver", &q, "--no-search", "--witness"]);
    let v = stdout_json(&out);
    assert_eq!(v["embeddable"], json!(true));
    assert_eq!(v["witness"]["sides"], json!(["LR"]));
}

#[test]
fn explore_streams_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let q = b3(dir.path());
    let seeds = dir.path().join("seeds.jsonl");
    let out = arcseed(&[
        "explore", "--quiver", &q, "--depth", "8", "--out", seeds.to_str().unwrap(), "--strict",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["seeds_visited"], json!(766));
    assert_eq!(report["violations"], json!([]));
    let text = fs::read_to_string(&seeds).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 766);
    for line in &lines[..50] {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), *line);
    }
    assert_eq!(lines[0], r#"{"b":[[0,2,2],[-2,0,2],[-2,-2,0]],"c":[[1,0,0],[0,1,0],[0,0,1]],"path":[]}"#);

    let out = arcseed(&["explore", "--quiver", &q, "--depth", "0", "--verify", "seven,tree"]);
    assert_eq!(stdout_json(&out)["seeds_visited"], json!(1));
}

#[test]
fn explore_relabels_unnormalized_input() {
    let dir = tempfile::tempdir().unwrap();
    // source is vertex 3, sink is vertex 1
    let q = write_quiver(dir.path(), json!([[0, -2, -3], [2, 0, -2], [3, 2, 0]]));
    let out = arcseed(&["explore", "--quiver", &q, "--depth", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["seeds_visited"], json!(10));
}

#[test]
fn check_tuple() {
    let dir = tempfile::tempdir().unwrap();
    let q = b3(dir.path());
    let out = arcseed(&["check-tuple", "--quiver", &q, "--words", "1,2,1;1,3,1;1"]);
    assert_eq!(
        stdout_json(&out),
        json!({"bad_pair_count": 1, "product_is_coxeter": true, "st_pass": true, "is_yseed": true})
    );
    let arcs = r#"[{"crossings":[],"endpoint":1},{"crossings":[1],"endpoint":2},{"crossings":[1,2],"endpoint":3}]"#;
    let out = arcseed(&["check-tuple", "--quiver", &q, "--arcs", arcs, "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["bad_pair_count"], json!(2));
}

#[test]
fn completion_and_roots() {
    let dir = tempfile::tempdir().unwrap();
    let q = b3(dir.path());
    let out = arcseed(&["complete-arc", "--quiver", &q, "--crossings", "1", "--endpoint", "2"]);
    assert_eq!(stdout_json(&out)["path"], json!([1]));

    let out = arcseed(&["complete-arc", "--quiver", &q, "--crossings", "2,1", "--endpoint", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = arcseed(&["root2refl", "--quiver", &q, "--root", "[2,1,0]"]);
    assert_eq!(stdout_json(&out), json!({"reflection": [1, 2, 1], "sign": "+"}));
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let q = b3(dir.path());
    let out = arcseed(&["export-dot", "--quiver", &q, "--target", "exchange-tree", "--depth", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 9);

    let out = arcseed(&["export-dot", "--quiver", &q, "--target", "exchange-tree", "--depth", "13"]);
    assert_eq!(out.status.code(), Some(2));

    let out = arcseed(&[
        "export-dot", "--quiver", &q, "--target", "cayley-fragment", "--path", "1", "--depth", "2",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("fillcolor=green").count(), 2);
}

#[test]
fn input_errors_exit_2() {
    let out = arcseed(&["arc2refl", "--crossings", "1,1", "--endpoint", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = arcseed(&["explore", "--quiver", "/nonexistent/q.json"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write_quiver(dir.path(), json!([[0, 2, -2], [-2, 0, 2], [2, -2, 0]]));
    let out = arcseed(&["explore", "--quiver", &cyclic]);
    assert_eq!(out.status.code(), Some(2));
    let out = arcseed(&["bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
