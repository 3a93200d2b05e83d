use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fibcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcat"))
        .args(args)
        .env_remove("FIBCAT_BOUND")
        .output()
        .unwrap()
}

fn arrow() -> String {
    fixture("arrow.fibcat").display().to_string()
}

#[test]
fn passing_check_exits_zero() {
    let out = fibcat(&["validate", &arrow()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().last(), Some("PASS"), "{text}");
    let out = fibcat(&["externalize", &arrow(), "--bound", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS (bound 2, truncated)"), "{text}");
}

#[test]
fn counterexample_exits_one() {
    let file = fixture("failing/surjections.fibcat");
    let out = fibcat(&["smallness-check", file.to_str().unwrap(), "--bound", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("right_cancellation"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fibcat(&[]).status.code(), Some(2));
    assert_eq!(fibcat(&["validate"]).status.code(), Some(2));
    assert_eq!(fibcat(&["validate", &arrow(), "--bound", "x"]).status.code(), Some(2));
    assert_eq!(fibcat(&["validate", "/nonexistent.fibcat"]).status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_position() {
    let file = fixture("failing/dangling.fibcat");
    let out = fibcat(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("dangling.fibcat:4:21"), "{err}");
}

#[test]
fn json_report_is_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = fibcat(&["isbell-check", &arrow(), "--json", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = fibcat(&["isbell-check", &arrow(), "--parallel", "--json", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], "fibcat-report/1");
    assert_eq!(v["status"], "pass");
    assert!(v["bound"].is_null());
}

#[test]
fn json_to_stdout() {
    let out = fibcat(&["concretize", &arrow(), "--bound", "1", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["check"], "concretize");
}

#[test]
fn bound_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fibcat"))
        .args(["externalize", &arrow(), "--json", "-"])
        .env("FIBCAT_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], 1);
    let out = Command::new(env!("CARGO_BIN_EXE_fibcat"))
        .args(["externalize", &arrow(), "--bound", "2", "--json", "-"])
        .env("FIBCAT_BOUND", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], 2);
}
