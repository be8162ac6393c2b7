use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clusterweyl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
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
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.code() == Some(0),
        "status {:?}, stderr {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn fixtures() -> (TempDir, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let a3 = write(
        dir.path(),
        "a3.json",
        &json!({"n": 3, "b": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]}),
    );
    let w4 = write(
        dir.path(),
        "w4.json",
        &json!({"n": 3, "b": [[0, -2, -2], [2, 0, -2], [2, 2, 0]]}),
    );
    let a3 = a3.to_str().unwrap().to_string();
    let w4 = w4.to_str().unwrap().to_string();
    (dir, a3, w4)
}

#[test]
fn mutate_at_vertex() {
    let (_d, a3, _) = fixtures();
    let v = json_of(&run(&["mutate", "--matrix", &a3, "--at", "2", "--json"]));
    assert_eq!(v["b"], json!([[0, -1, 1], [1, 0, -1], [-1, 1, 0]]));
    let back = run_stdin(
        &["mutate", "--matrix", "-", "--at", "2", "--json"],
        &v.to_string(),
    );
    assert_eq!(
        json_of(&back)["b"],
        json!([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    );
}

#[test]
fn relations_after_worked_mutation() {
    let (_d, a3, _) = fixtures();
    let v = json_of(&run(&[
        "relations",
        "--matrix",
        &a3,
        "--seq",
        "2",
        "--eps",
        "-1",
        "--verify",
        "--json",
    ]));
    let rels = v.as_array().unwrap();
    assert!(rels
        .iter()
        .any(|r| r["word"] == json!([1, 2, 3, 2]) && r["m"] == 2 && r["x"] == 0));
    assert!(rels
        .iter()
        .all(|r| r["verified"] == "proven-finite-by-matrix"));
    let text = run(&["relations", "--matrix", &a3, "--seq", "2", "--eps", "-1"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("(t1 t2 t3 t2)^2 = e"));
}

#[test]
fn basis_and_relations_round_trip_through_verify() {
    let (d, a3, _) = fixtures();
    let triple = json_of(&run(&[
        "basis", "--matrix", &a3, "--seq", "2,1,3", "--eps", "-1,1,-1", "--json",
    ]));
    let t = write(d.path(), "t.json", &triple);
    let rels = json_of(&run(&[
        "relations",
        "--matrix",
        &a3,
        "--seq",
        "2,1,3",
        "--eps",
        "-1,1,-1",
        "--json",
    ]));
    let r = write(d.path(), "r.json", &rels);
    let v = json_of(&run(&[
        "verify",
        "--triple",
        t.to_str().unwrap(),
        "--relations",
        r.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(v["involutions"], json!(true));
    assert_eq!(
        v["relations"].as_array().unwrap().len(),
        rels.as_array().unwrap().len()
    );

    // a relation with the wrong order fails verification and exits 1
    let mut wrong = rels.clone();
    wrong[0]["x"] = json!(2);
    wrong[0]["m"] = json!(4);
    let r = write(d.path(), "wrong.json", &wrong);
    let out = run(&[
        "verify",
        "--triple",
        t.to_str().unwrap(),
        "--relations",
        r.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn worked_basis() {
    let (_d, a3, _) = fixtures();
    let v = json_of(&run(&["basis", "--matrix", &a3, "--seq", "2", "--json"]));
    assert_eq!(
        v["companion"]["a"],
        json!([[2, -1, -1], [-1, 2, 1], [-1, 1, 2]])
    );
    assert_eq!(
        v["basis"]["vectors"],
        json!([[1, 1, 0], [0, -1, 0], [0, 0, 1]])
    );
}

#[test]
fn companion_search_feeds_admissibility() {
    let (d, a3, _) = fixtures();
    let m = json_of(&run(&["mutate", "--matrix", &a3, "--at", "2", "--json"]));
    let m = write(d.path(), "tri.json", &m);
    let c = json_of(&run(&[
        "find-companion",
        "--matrix",
        m.to_str().unwrap(),
        "--json",
    ]));
    let c = write(d.path(), "c.json", &c);
    let v = json_of(&run(&[
        "admissible",
        "--companion",
        c.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(v, json!({"admissible": true, "witness": null}));

    let bad = write(
        d.path(),
        "bad.json",
        &json!({"a": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
                "matrix": {"n": 3, "b": [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]}}),
    );
    let v = json_of(&run(&[
        "admissible",
        "--companion",
        bad.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(v["admissible"], json!(false));
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn walk_is_deterministic_and_keeps_weights() {
    let (_d, _, w4) = fixtures();
    let args = [
        "walk-ge4", "--matrix", &w4, "--steps", "10000", "--seed", "7", "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["ok"], json!(true));
    assert!(v["min_weight"].as_u64().unwrap() >= 4);
    assert_eq!(v["walks"][0]["steps"], json!(10000));
}

#[test]
fn group_orders() {
    let (_d, a3, _) = fixtures();
    let v = json_of(&run(&[
        "group-order",
        "--matrix",
        &a3,
        "--seq",
        "2,3,1",
        "--eps",
        "+1",
        "--json",
    ]));
    assert_eq!(v["order"], json!(24));
}

#[test]
fn affine_check_batch() {
    let out = run(&[
        "affine-check",
        "--from",
        "5",
        "--to",
        "6",
        "--jobs",
        "2",
        "--json",
    ]);
    let v = json_of(&out);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["passed"] == json!(true) && r["pairing"] == 0));
}

#[test]
fn exit_codes() {
    let (d, a3, _) = fixtures();
    assert_eq!(
        run(&["mutate", "--matrix", &a3, "--at", "4"]).status.code(),
        Some(1)
    );
    let bad = write(
        d.path(),
        "bad.json",
        &json!({"n": 2, "b": [[0, 1], [1, 0]]}),
    );
    let out = run(&["diagram", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(
        run(&["mutate", "--matrix", "/nonexistent.json", "--at", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["basis", "--matrix", &a3, "--seq", "1,2", "--eps", "1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["basis", "--matrix", &a3, "--seq", "1,2", "--eps", "1,1,1"])
            .status
            .code(),
        Some(1)
    );
}
