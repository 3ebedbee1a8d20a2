use std::process::{Command, Output};

use serde_json::Value;

fn gray2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gray2"))
        .args(args)
        .env_remove("GRAY2_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn shuffles_json_counts_nodes() {
    let o = gray2(&["--format", "json", "shuffles", "3", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
}

#[test]
fn degenerate_shuffles_dot_is_one_node() {
    let o = gray2(&["--format", "dot", "shuffles", "0", "5"]);
    let s = stdout(&o);
    assert_eq!(s.matches("label=").count(), 1);
    assert!(!s.contains("->"));
}

#[test]
fn bound_is_enforced() {
    let o = gray2(&["shuffles", "7", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound"));
    assert!(gray2(&["--bound", "8", "shuffles", "7", "1"]).status.success());
}

#[test]
fn gray_json_reloads() {
    let o = gray2(&["--format", "json", "gray", "[1](1)", "[1](0)"]);
    assert!(o.status.success());
    let c: gray2::twocat::TwoCat = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c.n_objects(), 4);
}

#[test]
fn malformed_object_is_a_usage_error() {
    let o = gray2(&["gray", "[1](", "[1](0)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = gray2(&["verify", "odot"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = gray2(&["--corrupt", "extra-object", "verify", "odot"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).lines().any(|l| l.starts_with("FAIL") && l.contains(" -- ")));
    let starved = gray2(&["--budget", "1", "verify", "odot"]);
    assert_eq!(starved.status.code(), Some(3));
}

#[test]
fn env_budget_is_a_fallback() {
    let o = Command::new(env!("CARGO_BIN_EXE_gray2"))
        .args(["verify", "odot"])
        .env("GRAY2_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_gray2"))
        .args(["--budget", "10000000", "verify", "odot"])
        .env("GRAY2_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_json_report_is_stable() {
    let a = stdout(&gray2(&["--format", "json", "verify", "graytenscolim"]));
    let b = stdout(&gray2(&["--format", "json", "verify", "graytenscolim"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}
