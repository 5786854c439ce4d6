//! Exit codes, flags and output of the `g2check` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn g2check(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2check")).args(args).output().unwrap()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("g2check-cli-{}-{name}", std::process::id()))
}

#[test]
fn check_single_field() {
    let out = g2check(&["check", "--field", "-5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: non-existence verified"));
    assert!(text.contains("<15.043"));
}

#[test]
fn json_certificate_is_written() {
    let path = temp("cert.json");
    let out = g2check(&["check", "--field", "3", "--quiet", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["schema"], "g2check-certificate/1");
    assert_eq!(v["field"]["d"], 3);
    assert_eq!(v["solvable_branch"].as_array().unwrap().len(), 7);
    assert_eq!(v["verdict"], "non_existence_verified");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(g2check(&["check"]).status.code(), Some(2));
    assert_eq!(g2check(&["check", "--field", "7"]).status.code(), Some(2));
    assert_eq!(g2check(&["check", "--field", "2", "--all"]).status.code(), Some(2));
    assert_eq!(g2check(&["verify-lemmas", "--base", "ramified", "--tame", "3"]).status.code(), Some(2));
    assert_eq!(g2check(&["verify-lemmas", "--base", "sideways"]).status.code(), Some(2));
    assert_eq!(g2check(&["check", "--field", "2", "--precision", "4"]).status.code(), Some(2));
    assert_eq!(g2check(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_lemmas_exit_codes() {
    let ok = g2check(&["verify-lemmas", "--base", "ramified", "--abelian"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap().matches("PASS").count(), 5);
    assert_eq!(g2check(&["verify-lemmas", "--base", "unramified"]).status.code(), Some(0));
    assert_eq!(g2check(&["verify-lemmas", "--base", "unramified", "--tame", "3"]).status.code(), Some(0));
    // realized abelian values on the tame base differ from the closed forms
    let bad = g2check(&["verify-lemmas", "--base", "unramified", "--tame", "3", "--abelian"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("mismatch"));
}

#[test]
fn selmer_command() {
    let path = temp("selmer.json");
    let out = g2check(&["selmer", "--field", "-5", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2+s  collapses onto class mask 0b11"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["quartic_fields"].as_array().unwrap().len(), 3);
}

#[test]
fn precision_flag_is_accepted() {
    assert_eq!(g2check(&["check", "--field", "5", "--precision", "40", "--quiet"]).status.code(), Some(0));
}
