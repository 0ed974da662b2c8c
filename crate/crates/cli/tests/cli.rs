use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn signlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write(p: &str, contents: &str) {
    fs::write(Path::new(p), contents).unwrap();
}

#[test]
fn emitted_witness_verifies_separately() {
    let dir = TempDir::new().unwrap();
    let w = path(&dir, "w.txt");
    let t = path(&dir, "t.txt");
    let o = signlab(&["signdeg", "--formula", "(x1 & !x2) | (!x1 & x2)", "--emit-witness", &w]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("degree       2"));
    write(&t, "2:+--+\n");
    let v = signlab(&["verify", "--witness", &w, "--table", &t]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).contains("verified"));

    let bad = signlab(&["verify", "--witness", &w, "--formula", "x1 & x2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("correlation ⟨f,p⟩ = -1/2 < 1"));
}

#[test]
fn witness_command_emits_parseable_file() {
    let dir = TempDir::new().unwrap();
    let w = path(&dir, "w.txt");
    let o = signlab(&["witness", "--degree", "3", "--formula", "x1 & x2 | x2 & x3 | x1 & x3", "--output", &w]);
    // Majority is a threshold function; no degree-3 witness exists.
    assert_eq!(o.status.code(), Some(1));
    let o = signlab(&["witness", "--degree", "3", "--table", &{
        let t = path(&dir, "p.txt");
        write(&t, "3:+--+-++-\n");
        t
    }, "--output", &w]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = fs::read_to_string(&w).unwrap();
    assert!(text.starts_with("claimed_degree=3 alpha=inf\nn=3\n"));
}

#[test]
fn degree_with_finite_alpha() {
    let o = signlab(&["degree", "--alpha", "2", "--formula", "x1 | x2 | x3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("alpha        2\ndegree       2"));
    let o = signlab(&["degree", "--alpha", "1/2", "--formula", "x1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn survey_histograms() {
    let one = stdout(&signlab(&["survey", "--nvars", "1"]));
    assert!(one.contains("     0         2\n     1         2\n total         4"));
    let two = stdout(&signlab(&["survey", "--nvars", "2"]));
    assert!(two.contains(" total        16"));
    assert!(two.contains("degree 2 attained by 2:+--+ 2:-++-"));
    let three = stdout(&signlab(&["survey", "--nvars", "3"]));
    assert!(three.contains(" total       256"));
    assert!(three.contains("degree 3 attained by 3:-++-+--+ 3:+--+-++-"));
    assert_eq!(signlab(&["survey", "--nvars", "5"]).status.code(), Some(2));
}

#[test]
fn compose_report_columns() {
    let dir = TempDir::new().unwrap();
    let h = path(&dir, "h.txt");
    let o = signlab(&["compose", "--outer", "x1 | x2", "--inner", "x1 & x2 & x3 & x4", "--emit-witness", &h]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("  d_f   d_g  product  actual  slack  verified\n    1     1        1       2      1       yes"), "{out}");
    assert!(fs::read_to_string(&h).unwrap().starts_with("claimed_degree=1 alpha=inf\nn=8\n"));
    let table = signlab(&["compose", "--outer", "2:+--+", "--inner", "2:+--+"]);
    assert!(stdout(&table).contains("    2     2        4       4      0       yes"));
}

#[test]
fn adversary_round_trip() {
    let dir = TempDir::new().unwrap();
    let c = path(&dir, "c.txt");
    assert!(signlab(&["adversary", "--or-certificate", "4", "--output", &c]).status.success());
    let o = signlab(&["adversary", "--formula", "x1 | x2 | x3 | x4", "--certificate", &c]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ratio        2.000000000"));
}

#[test]
fn reproduce_filters_and_reports_deterministically() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.txt"), path(&dir, "b.txt"));
    assert!(signlab(&["reproduce", "--only", "composition", "--out", &a]).status.success());
    assert!(signlab(&["reproduce", "--only", "composition", "--out", &b]).status.success());
    let report = fs::read_to_string(&a).unwrap();
    assert_eq!(report, fs::read_to_string(&b).unwrap());
    let ids: Vec<&str> = report.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(ids, ["composition-pairs", "composition-witnesses", "composition-alpha-2-xor", "approx-degree-2-xor-4"]);
    assert!(report.lines().all(|l| l.split(' ').count() == 5 && l.split(' ').nth(1) == Some("PASS")));
}

#[test]
fn corrupted_witness_fails_the_suite() {
    let o = signlab(&["reproduce", "--only", "verify", "--corrupt-witness"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness-file-verify  FAIL"));
    assert!(signlab(&["reproduce", "--only", "verify"]).status.success());
}

#[test]
fn timeouts_fail_instead_of_hanging() {
    let o = signlab(&["reproduce", "--only", "sweep", "--timeout-secs", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("timeout"));
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(signlab(&["signdeg", "--formula", "x1 &"]).status.code(), Some(2));
    assert_eq!(signlab(&["signdeg"]).status.code(), Some(2));
    assert_eq!(signlab(&["reproduce", "--only", "nope"]).status.code(), Some(2));
}
