use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn multiperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiperm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_prints_the_canonical_count() {
    let o = multiperm(&["count", "-m", "2", "-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "canonical_count 150"), "{}", stdout(&o));
}

#[test]
fn count_json_has_the_report_fields() {
    let o = multiperm(&["count", "-m", "3", "-n", "9", "--json", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["canonical_count"], 3);
    assert_eq!(v["raw_count"], 6);
    assert_eq!(v["palindrome_count"], 0);
    assert_eq!(v["verdict"]["status"], "possible");
    assert!(v["estimate"].as_f64().unwrap() > 0.0);
    assert!(v["version"].is_string());
}

#[test]
fn verify_accepts_the_fixture() {
    let o = multiperm(&["verify", &fixture("p2n7.txt"), "-m", "2", "-n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("26 valid, 0 invalid, 0 non-canonical"), "{}", stdout(&o));
}

#[test]
fn verify_reports_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3 1 2 1 3 2\n1 2 3 1 2 3\n2 3 1 2 1 3\n3 1 2\n").unwrap();
    let o = multiperm(&["verify", path.to_str().unwrap(), "-m", "2", "-n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("line 2: BadSpacing"), "{out}");
    assert!(out.contains("line 4:"), "{out}");
    assert!(out.contains("2 valid, 2 invalid, 1 non-canonical"), "{out}");

    let strict = multiperm(&["verify", path.to_str().unwrap(), "-m", "2", "-n", "3", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&strict.stderr).contains("line 4"));
}

#[test]
fn oversized_problem_is_unsupported() {
    let o = multiperm(&["count", "-m", "2", "-n", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(multiperm(&["count", "-m", "1", "-n", "4"]).status.code(), Some(2));
    assert_eq!(multiperm(&["count", "-m", "2"]).status.code(), Some(2));
    assert_eq!(multiperm(&["count", "-m", "2", "-n", "7", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(multiperm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sorted_enumeration_is_byte_identical() {
    let args = ["enumerate", "-m", "2", "-n", "7", "--sort"];
    let a = multiperm(&args);
    let b = multiperm(&args);
    let c = multiperm(&["enumerate", "-m", "2", "-n", "7", "--sort", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 26);
}

#[test]
fn enumerate_to_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2n8.txt");
    let o = multiperm(&["enumerate", "-m", "2", "-n", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v = multiperm(&["verify", path.to_str().unwrap(), "-m", "2", "-n", "8"]);
    assert!(stdout(&v).contains("150 valid, 0 invalid, 0 non-canonical"));
}

#[test]
fn enumerate_limit_and_json() {
    let o = multiperm(&["enumerate", "-m", "2", "-n", "8", "--limit", "5"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = multiperm(&["enumerate", "-m", "2", "-n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["enumeration"]["solutions"][0], "4 1 3 1 2 4 3 2");
    assert_eq!(v["canonical_count"], 1);
}

#[test]
fn analyze_reports_tallies() {
    let o = multiperm(&["analyze", &fixture("p2n7.txt"), "-m", "2", "-n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("analyzed 26"));
    assert!(out.contains("weight_failures 0"));
    let o = multiperm(&["analyze", &fixture("p3n9.txt"), "-m", "3", "-n", "9", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["analysis"]["residue_failures"], 0);
    assert_eq!(v["analysis"]["mu_skipped"], true);
}

#[test]
fn exists_and_estimate() {
    let o = multiperm(&["exists", "-m", "3", "-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("possible"));
    assert!(stdout(&o).contains("necessary only"));
    let o = multiperm(&["exists", "-m", "4", "-n", "100001"]);
    assert!(stdout(&o).starts_with("ruled out"));
    let o = multiperm(&["estimate", "-m", "2", "-n", "12", "--actual", "108144"]);
    let out = stdout(&o);
    assert!(out.contains("estimate 116943.75"), "{out}");
    assert!(out.contains("ratio 0.92"), "{out}");
    let o = multiperm(&["estimate", "-m", "3", "-n", "17"]);
    assert!(stdout(&o).contains("conjectural"));
    assert_eq!(multiperm(&["estimate", "-m", "5", "-n", "17"]).status.code(), Some(3));
}
