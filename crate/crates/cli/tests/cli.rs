//! The binary's exit codes and stream discipline.

use std::process::Command;

fn ckverify(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ckverify")).args(args).output().expect("binary runs")
}

#[test]
fn passing_run_exits_zero() {
    let out = ckverify(&["--g", "2", "--checks", "mck"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("mck.vanishing"));
}

#[test]
fn schubert_value_in_json() {
    let out = ckverify(&["--checks", "schubert", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let entry = v["entries"].as_array().unwrap().iter().find(|e| e["check"] == "schubert.fano-c2").unwrap();
    assert_eq!(entry["values"]["degree"], "16");
}

#[test]
fn cap_skip_exit_codes() {
    let strict = ckverify(&["--g", "2", "--checks", "taut-sym", "--term-cap", "719"]);
    assert_eq!(strict.status.code(), Some(2));
    let lenient = ckverify(&["--g", "2", "--checks", "taut-sym", "--term-cap", "719", "--strict-caps", "false"]);
    assert_eq!(lenient.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_64() {
    for args in [&["--bogus"][..], &["--checks", "nope"], &["--g", "0"], &["--term-cap", "0"], &["--format", "xml"]] {
        let out = ckverify(args);
        assert_eq!(out.status.code(), Some(64), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(ckverify(&["--help"]).status.code(), Some(0));
}

#[test]
fn diagnostics_go_to_stderr() {
    let out = ckverify(&["--g", "1", "--checks", "fp,dims", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("fp"));
    serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
}

#[test]
fn output_is_reproducible_across_workers() {
    let a = ckverify(&["--g", "1,2", "--format", "json", "--workers", "1"]);
    let b = ckverify(&["--g", "2,1", "--format", "json", "--workers", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
