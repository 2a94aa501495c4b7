use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqcurves")).args(args).output().expect("spawn fqcurves")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn counts_exceptional_quartic() {
    let v = json(&["count", "--field", "p=2,k=2", "--catalog", "exceptional_quartic"]);
    assert_eq!(v["N"], 14);
    assert_eq!(v["d"], 4);
    assert_eq!(v["singular_rational"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_catalog_passes() {
    let out = run(&["verify-catalog", "--q", "2,3,4,5,7,8,9"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["rows"].as_array().unwrap().len() > 30);
}

#[test]
fn missing_curve_file_is_an_error() {
    let out = run(&["count", "--curve", "/no/such/curve.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_inline_reports_position() {
    let out = run(&["count", "--field", "p=3", "--inline", "2 0 0 1; 1 1 1 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));
}

#[test]
fn lemma_check_on_degree_q_curve() {
    let v = json(&["lemma-check", "--field", "p=5", "--catalog", "deg_q"]);
    assert_eq!(v["N"], 21);
    assert_eq!(v["identities"], serde_json::json!([true, true, true]));
    assert_eq!(v["tangency_holds"], true);
}

#[test]
fn lemma_check_marks_tangency_not_applicable_for_a_line() {
    let out = run(&["lemma-check", "--field", "p=2", "--inline", "0 0 1 1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(4) not applicable"), "{text}");
    assert_eq!(text.matches("PASS").count(), 3);
}

#[test]
fn output_is_reproducible() {
    let args = ["search", "--field", "p=2,k=2", "-d", "4", "--mode", "random", "--seed", "11", "--samples", "3000"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[&args[..], &["--workers", "1"]].concat());
    assert_eq!(a.stdout, c.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timestamp").is_none());
}

#[test]
fn curve_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("fqcurves-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hermitian.txt");
    let out = run(&["catalog", "hermitian", "--field", "p=3,k=2", "--format", "text"]);
    assert!(out.status.success());
    std::fs::write(&path, &out.stdout).unwrap();
    let v = json(&["count", "--curve", path.to_str().unwrap()]);
    assert_eq!(v["N"], 28);
    let out = run(&["count", "--curve", path.to_str().unwrap(), "--field", "p=2,k=2"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bounds_flag_sziklai_only_for_non_exceptional() {
    let out = run(&["bounds", "--field", "p=2,k=2", "--catalog", "exceptional_quartic"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exceptional"], true);
    let v = json(&["bounds", "--q", "9", "--degree", "4"]);
    assert_eq!(v["sziklai"], 28);
    assert_eq!(v["trivial"], 91);
}

#[test]
fn equivalence_finds_a_matrix() {
    let v = json(&[
        "equiv", "--field", "p=3", "--inline", "0 1 1 1;2 0 0 2", "--with-inline", "1 0 1 1;0 2 0 2",
    ]);
    assert_eq!(v["equivalent"], true);
    let v = json(&["equiv", "--field", "p=3", "--inline", "0 1 1 1;2 0 0 2", "--with-inline", "1 1 0 1"]);
    assert_eq!(v["equivalent"], false);
}

#[test]
fn spectrum_csv_lists_every_line() {
    let out = run(&["spectrum", "--field", "p=3", "--catalog", "smooth_conic", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 13);
    let out = run(&["count", "--field", "p=3", "--catalog", "smooth_conic", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["count", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
