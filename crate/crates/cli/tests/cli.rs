use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn rootpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn interior_of_k23() {
    let k23 = data("k23.json");
    let out = rootpoly(&[
        "interior",
        "--graph",
        k23.to_str().unwrap(),
        "--class",
        "emerald",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1 + 2ξ");
    let out = rootpoly(&[
        "interior",
        "--graph",
        k23.to_str().unwrap(),
        "--class",
        "violet",
        "--order",
        "v1,v0",
    ]);
    assert_eq!(stdout(&out).trim(), "1 + 2ξ");
}

#[test]
fn verify_main_theorem_passes() {
    let k23 = data("k23.json");
    let out = rootpoly(&["verify", "main-theorem", "--graph", k23.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS main-theorem [k23]"));
    let out = rootpoly(&[
        "verify",
        "main-theorem",
        "--graph",
        k23.to_str().unwrap(),
        "--format",
        "record",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["witnesses"].as_array().unwrap().len(), 4);
}

#[test]
fn ordinary_checks() {
    let tri = data("triangle.json");
    for check in ["reliability", "graph-specialization"] {
        let out = rootpoly(&[
            "verify",
            check,
            "--graph",
            tri.to_str().unwrap(),
            "--seed",
            "3",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let out = rootpoly(&[
        "verify",
        "saalschutz",
        "--m",
        "3",
        "--n",
        "2",
        "--s-max",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn plane_fixture_check() {
    let plane = data("plane12.json");
    let out = rootpoly(&[
        "verify",
        "plane-fixture",
        "--graph",
        plane.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("1 + 4ξ + 7ξ² + 4ξ³"));
    let out = rootpoly(&[
        "verify",
        "plane-fixture",
        "--graph",
        data("k23.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ehrhart_record() {
    let k23 = data("k23.json");
    let out = rootpoly(&[
        "ehrhart",
        "--graph",
        k23.to_str().unwrap(),
        "--format",
        "record",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["d"], 3);
    assert_eq!(doc["epsilon_values"], serde_json::json!([1, 6, 18, 40]));
    assert_eq!(doc["a_coefficients"], serde_json::json!([1, 2, 0, 0]));
}

#[test]
fn triangulation_outputs() {
    let k23 = data("k23.json");
    let out = rootpoly(&[
        "triangulate",
        "--graph",
        k23.to_str().unwrap(),
        "--seed",
        "5",
        "--format",
        "record",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["seed"], 5);
    assert_eq!(doc["members"].as_array().unwrap().len(), 3);
    let out = rootpoly(&[
        "facevectors",
        "--graph",
        k23.to_str().unwrap(),
        "--strategy",
        "staircase",
        "--format",
        "record",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["h"], serde_json::json!([0, 0, 0, 2, 1]));
    assert_eq!(doc["f_interior"], serde_json::json!([0, 0, 2, 3]));
}

#[test]
fn hypertrees_and_exterior() {
    let k23 = data("k23.json");
    let out = rootpoly(&[
        "hypertrees",
        "--graph",
        k23.to_str().unwrap(),
        "--class",
        "violet",
        "--format",
        "record",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["hypertrees"].as_array().unwrap().len(), 3);
    let out = rootpoly(&["exterior", "--graph", k23.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2_with_distinct_messages() {
    let missing = rootpoly(&["interior", "--graph", "missing.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("cannot read graph file"));

    let tri = data("triangle.json");
    let schema = rootpoly(&["interior", "--graph", tri.to_str().unwrap()]);
    assert_eq!(schema.status.code(), Some(2));
    assert!(stderr(&schema).contains("malformed graph file"));

    let star = data("star21.json");
    let cap = rootpoly(&["interior", "--graph", star.to_str().unwrap()]);
    assert_eq!(cap.status.code(), Some(2));
    assert!(
        stderr(&cap).contains("size cap exceeded"),
        "{}",
        stderr(&cap)
    );

    let disconnected = rootpoly(&[
        "interior",
        "--graph",
        data("disconnected.json").to_str().unwrap(),
    ]);
    assert_eq!(disconnected.status.code(), Some(2));
    assert!(stderr(&disconnected).contains("disconnected"));

    assert_eq!(rootpoly(&["bogus"]).status.code(), Some(2));
    assert_eq!(rootpoly(&["verify", "main-theorem"]).status.code(), Some(2));
}

#[test]
fn corpus_listing() {
    let out = rootpoly(&["corpus"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.starts_with("k23\t3+2 vertices\t6 edges")));
    assert!(text.lines().any(|l| l.starts_with("plane12\t")));
}

#[test]
fn corpus_check_is_sorted() {
    let out = rootpoly(&["corpus", "--check", "a2", "--format", "record"]);
    assert_eq!(out.status.code(), Some(0));
    let docs: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = docs.iter().map(|d| d["graph"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(docs.iter().all(|d| d["passed"] == true));
}
