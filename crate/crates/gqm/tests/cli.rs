//! End-to-end tests of the installed binary: argument plumbing, exit codes,
//! and byte-for-byte reproducibility of the rendered output.

use std::process::{Command, Output};

fn gqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqm"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["table1", "--q", "3"],
        vec!["table1", "--q", "3", "--format", "json"],
        vec!["states", "--q", "2", "--format", "csv"],
        vec!["counts", "--q", "2", "--dim", "4", "--check-oracle"],
        vec!["probs", "--q", "5"],
        vec!["chsh", "--q", "2", "--all-states"],
        vec!["fun", "--n", "4", "--format", "json"],
        vec!["lhv", "--from-gqm", "--q", "2", "--format", "json"],
    ] {
        let first = gqm(&args);
        let second = gqm(&args);
        assert!(first.status.success(), "{args:?} failed: {}", stdout(&first));
        assert_eq!(first.stdout, second.stdout, "non-deterministic output for {args:?}");
        assert_eq!(first.stderr, second.stderr);
    }
}

#[test]
fn non_prime_power_orders_exit_2() {
    let out = gqm(&["field", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr)
        .contains("q must be a prime power (q=1: use `fun`)"));
    let out = gqm(&["chsh", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_and_sets_exit_code() {
    let out = gqm(&["verify-all", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("all checks passed"), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
}

#[test]
fn field_report_matches_construction() {
    let out = gqm(&["field", "--p", "3", "--n", "2", "--elements", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["q"], 9);
    assert_eq!(v["modulus_display"], "x^2+1");
    assert_eq!(v["elements"].as_array().unwrap().len(), 9);
    // element wire form p^n:c0,c1
    assert_eq!(v["elements"][1]["code"], "3^2:1,0");
}

#[test]
fn table1_q2_reports_the_skipped_pattern() {
    let out = gqm(&["table1", "--q", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("skipped A_rs A_tu"));
    assert!(text.contains("A_rs A_st"));
}

#[test]
fn malformed_lhv_file_exits_2() {
    let dir = std::env::temp_dir().join("gqm-cli-integration");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, r#"{"m1": 1, "m2": 1, "pairs": {}}"#).unwrap();
    let out = gqm(&["lhv", "--table", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing pair"));
}
