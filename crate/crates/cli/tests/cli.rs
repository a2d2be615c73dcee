use std::io::Write;
use std::process::{Command, Output};

use rank3gcm::goldens::CATALOG_TEXT;

fn rank3gcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank3gcm"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn golden_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&rank3gcm(&["enumerate", "--lambda-max", "0"])), 2);
    assert_eq!(code(&rank3gcm(&["enumerate", "--max-sides", "2"])), 2);
    assert_eq!(code(&rank3gcm(&["enumerate", "--r", "x/0"])), 2);
    assert_eq!(code(&rank3gcm(&["frobnicate"])), 2);
    assert_eq!(code(&rank3gcm(&["check", "/nonexistent/file"])), 2);
    let empty = golden_file("# nothing here\n");
    assert_eq!(
        code(&rank3gcm(&["check", empty.path().to_str().unwrap()])),
        2
    );
    let garbage = golden_file("r = -1\n1 x 1\n0 1 2\n");
    assert_eq!(
        code(&rank3gcm(&["check", garbage.path().to_str().unwrap()])),
        2
    );
}

#[test]
fn check_reports_matrices() {
    let f = golden_file("r = -22\n2 1 1\n0 1 2\n");
    let o = rank3gcm(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("Weyl square: -22"), "{out}");
    assert!(out.contains("-4  -1   2"), "{out}");
}

#[test]
fn check_rejects_non_adjacent_pairing() {
    let f = golden_file("r = -1\n1 1 1\n3 1 1\n");
    assert_eq!(code(&rank3gcm(&["check", f.path().to_str().unwrap()])), 1);
}

#[test]
fn filtered_enumeration() {
    let o = rank3gcm(&["enumerate", "--r", "-7/18", "--format", "records"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["r"], "-7/18");
    assert_eq!(v["n"], 5);
}

#[test]
fn side_cap_exits_3() {
    let o = rank3gcm(&["enumerate", "--lambda-max", "1", "--max-sides", "4"]);
    assert_eq!(code(&o), 3);
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_passes_on_embedded_data() {
    let o = rank3gcm(&["verify", "--skip-engine"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(
        out.lines()
            .all(|l| l.starts_with("PASS") || l.starts_with("SKIP")),
        "{out}"
    );
}

#[test]
fn verify_catches_a_corrupted_catalog() {
    let corrupted = CATALOG_TEXT.replacen("r = -22\n2 1 1\n0 1 2", "r = -22\n2 1 1\n0 1 3", 1);
    assert_ne!(corrupted, CATALOG_TEXT);
    let f = golden_file(&corrupted);
    let o = rank3gcm(&[
        "verify",
        "--skip-engine",
        "--catalog",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("FAIL catalog"), "{out}");
}
