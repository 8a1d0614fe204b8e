use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const STAR: &str = r#"{"blocks": [["a"], ["b"], ["c"]], "edges": [[0, 1], [0, 2]]}"#;
const CHAIN2: &str = r#"{"classes": [["a"], ["b"]], "covers": [[0, 1]]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hopfspecies"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn doc(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn chromatic_of_the_star() {
    let d = doc(&["chromatic", "--q", "1", "-"], STAR);
    assert_eq!(d["schema"], "hopfspecies/1");
    assert_eq!(d["command"], "chromatic");
    assert_eq!(d["polynomial"]["coeffs"], json!(["0", "1", "-2", "1"]));
    let pretty = run(&["--pretty", "chromatic", "-"], STAR);
    assert_eq!(String::from_utf8_lossy(&pretty.stdout).trim(), "X^3 - 2 X^2 + X");
}

#[test]
fn ehrhart_of_the_two_chain() {
    let d = doc(&["ehrhart", "--q", "1", "-"], CHAIN2);
    assert_eq!(d["polynomial"]["coeffs"], json!(["0", "-1/2", "1/2"]));
    let d = doc(&["ehrhart", "--q", "-1", "-"], CHAIN2);
    assert_eq!(d["polynomial"]["coeffs"], json!(["0", "1/2", "1/2"]));
    assert_eq!(d["q"], "-1");
}

#[test]
fn fock_images_and_morphisms() {
    let d = doc(&["phi", "ehr", "-"], CHAIN2);
    assert_eq!(d["result"].as_array().unwrap().len(), 1);
    let d = doc(&["qsym", "-"], STAR);
    let total: i64 = d["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_str().unwrap().parse::<i64>().unwrap())
        .sum();
    assert_eq!(total, 8);
    let w = run(&["--pretty", "wqsym", "-"], r#"{"classes": [["1", "3"], ["2"]], "covers": [[0, 1]]}"#);
    assert_eq!(String::from_utf8_lossy(&w.stdout).trim(), "(121)");
}

#[test]
fn delta_and_gamma_round_trip() {
    let d = doc(&["delta", "-"], CHAIN2);
    assert_eq!(d["result"].as_array().unwrap().len(), 2);
    let g = doc(&["gamma", "-"], CHAIN2);
    let gi = doc(&["gamma", "--inverse", "-"], CHAIN2);
    assert_eq!(g["result"].as_array().unwrap().len(), 2);
    assert_eq!(gi["inverse"], true);
    let coeffs: Vec<&str> = gi["result"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert!(coeffs.contains(&"-1"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["qsym", "-"][..], &["delta", "-"], &["gamma", "-"], &["phi", "chr", "-"]] {
        let a = run(args, STAR);
        let b = run(args, STAR);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let reordered = r#"{"blocks": [["c"], ["a"], ["b"]], "edges": [[1, 2], [0, 1]]}"#;
    assert_eq!(doc(&["phi", "chr", "-"], STAR)["result"], doc(&["phi", "chr", "-"], reordered)["result"]);
}

#[test]
fn parse_diagnostics() {
    let out = run(&["chromatic", "-"], r#"{"blocks": [["a", "b"], ["b"]], "edges": []}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"b\""), "{}", stderr(&out));

    let out = run(&["qsym", "-"], r#"[["a", "a"]]"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("duplicate label \"a\""));

    let out = run(&["ehrhart", "-"], r#"{"classes": [["x"], ["y"], ["z"]], "covers": [[0, 1], [1, 2], [2, 0]]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cycle"));
    assert!(stderr(&out).contains("{x}") && stderr(&out).contains("{z}"));

    let out = run(&["chromatic", "-"], "not json");
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["ehrhart", "-"], STAR);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["chromatic", "--q", "1/0", "-"], STAR);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_errors() {
    let blocks: Vec<Value> = (0..9).map(|i| json!([i.to_string()])).collect();
    let big = json!({"blocks": blocks, "edges": []}).to_string();
    let out = run(&["chromatic", "-"], &big);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let out = run(&["check", "--max-size", "9"], "");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_reports_every_law() {
    let d = doc(&["check", "--max-size", "2"], "");
    assert_eq!(d["schema"], "hopfspecies/1");
    assert_eq!(d["passed"], true);
    let laws = d["laws"].as_array().unwrap();
    assert!(laws.len() >= 50);
    assert!(laws.iter().all(|l| l["passed"] == true && l.get("counterexample").is_none()));
}
