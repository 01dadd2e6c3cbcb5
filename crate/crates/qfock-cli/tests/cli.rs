//! End-to-end tests of the binary: documented output values, exit codes,
//! file emission, and byte-level reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn qfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn norm_prints_exact_and_float() {
    let out = qfock(&["norm", "--word", "0,0,0", "--q", "1/2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "21/8\n2.625\n");
}

#[test]
fn norm_float_backend_prints_float_only() {
    let out = qfock(&["norm", "--word", "0,0", "--q", "0.5"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "1.5\n");
}

#[test]
fn inner_of_swapped_orthogonal_letters_is_q() {
    let out = qfock(&["inner", "--a", "0,1", "--b", "1,0", "--q", "1/2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "1/2\n0.5\n");
    // Vacuum against vacuum: empty word strings.
    let out = qfock(&["inner", "--a", "", "--b", "", "--q", "1/2"]);
    assert_eq!(stdout_of(&out), "1\n1\n");
}

#[test]
fn mixing_closed_form_partial_sum() {
    let out = qfock(&["mixing", "--a", "1", "--b", "1", "--q", "1/2", "--nmax", "10"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("1398101/1048576"), "partial sum missing:\n{text}");
    assert!(text.contains("verdict: summable-evidence"));
}

#[test]
fn mixing_emits_schema_conformant_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("series.json");
    let csv_path = dir.path().join("series.csv");
    let out = qfock(&[
        "mixing", "--a", "1,0", "--b", "0,1", "--q", "-1/2", "--nmax", "8",
        "--json", json_path.to_str().unwrap(),
        "--csv", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["q"], "-1/2");
    assert_eq!(doc["a"], "1,0");
    assert_eq!(doc["b"], "0,1");
    assert!(doc["fitted_rate"].is_number());
    assert!(doc["verdict"].is_string());
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    for (n, e) in entries.iter().enumerate() {
        assert_eq!(e["N"], n);
        assert!(e["c_exact"].is_string());
        assert!(e["c_float"].is_number());
        assert!(e["partial_sum_float"].is_number());
        assert!(e["ratio_float"].is_number() || e["ratio_float"].is_null());
    }

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "N,c_exact,c_float,partial_sum_exact,partial_sum_float,ratio_exact,ratio_float"
    );
    assert_eq!(lines.count(), 9);
}

#[test]
fn runs_are_byte_identical() {
    let args = ["mixing", "--a", "1,1", "--b", "1,1", "--q", "1/2", "--nmax", "12"];
    let first = qfock(&args);
    let second = qfock(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(exit_code(&first), 0);

    let check = ["commutator-check", "--q", "1/2", "--samples", "10", "--seed", "7"];
    let first = qfock(&check);
    let second = qfock(&check);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn commutator_check_free_case_passes() {
    let out = qfock(&["commutator-check", "--q", "0", "--samples", "20"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("sample 19: PASS"));
    assert!(text.contains("all PASS"));
}

#[test]
fn commutator_check_float_backend_passes() {
    let out = qfock(&["commutator-check", "--q", "0.77", "--samples", "10"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn hermite_check_passes_both_signs() {
    for q in ["1/2", "-1/2"] {
        let out = qfock(&["hermite-check", "--q", q, "--nmax", "12"]);
        assert_eq!(exit_code(&out), 0, "q = {q}");
        assert!(stdout_of(&out).contains("all PASS"));
    }
}

#[test]
fn ortho_check_counts_pairs() {
    let out = qfock(&["ortho-check", "--jmax", "6", "--q", "1/2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("all 49 pairs"));
}

#[test]
fn gram_reports_positivity_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("gram.json");
    let out = qfock(&[
        "gram", "--jmax", "4", "--q", "3/10",
        "--json", json_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("PASS: all 31 LDL^T pivots nonnegative"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["pivots"].as_array().unwrap().len(), 31);
    assert_eq!(doc["pivots"][0]["exact"], "1");
}

#[test]
fn wick_prints_monomial_lines() {
    let out = qfock(&["wick", "--word", "0,1", "--q", "1/2"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text, "q^0 · c0 c1\nq^0 · c0 a1\nq^1 · c1 a0\nq^0 · a0 a1\n");

    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("wick.json");
    let out = qfock(&[
        "wick", "--word", "0,0,1", "--q", "1/2",
        "--json", json_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["monomial_count"], 8);
    assert_eq!(doc["monomials"].as_array().unwrap().len(), 8);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        // q outside (-1, 1), unparseable q, bad word, bad letter.
        &["norm", "--word", "0", "--q", "3/2"],
        &["norm", "--word", "0", "--q", "half"],
        &["norm", "--word", "0,x"],
        &["norm", "--word", "0,7"],
        // mixing needs a second basis direction.
        &["mixing", "--a", "0", "--b", "0", "--dim", "1", "--nmax", "6"],
        // unknown subcommand is a clap usage error.
        &["frobnicate"],
    ];
    for args in cases {
        let out = qfock(args);
        assert_eq!(exit_code(&out), 2, "args: {args:?}");
    }
}

#[test]
fn degree_cap_breach_is_reported() {
    let out = qfock(&["wick", "--word", "0,0,0", "--degree-cap", "2", "--q", "1/2"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degree cap"), "stderr: {err}");
}

#[test]
fn json_is_not_written_on_compute_failure() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("never.json");
    let out = qfock(&[
        "mixing", "--a", "1", "--b", "1", "--nmax", "2",
        "--json", json_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2); // series needs nmax >= 4
    assert!(!Path::new(&json_path).exists());
}
