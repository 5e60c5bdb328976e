//! End-to-end tests of the `flexion` binary: subcommands, exit codes, report
//! files, and the environment override for the evaluation modulus.

use std::path::PathBuf;
use std::process::Command;

fn flexion() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flexion"))
}

fn run(args: &[&str]) -> (String, String, Option<i32>) {
    let out = flexion().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code(),
    )
}

#[test]
fn verify_single_check_pass_exit_zero() {
    let (stdout, _, code) = run(&["verify", "--check", "negpush", "--backend", "exact", "--seed", "5"]);
    assert_eq!(code, Some(0), "stdout: {stdout}");
    assert!(stdout.contains("negpush"));
    assert!(stdout.contains("pass"));
}

#[test]
fn verify_eval_backend_and_report_file() {
    let dir = std::env::temp_dir().join("flexion-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let report: PathBuf = dir.join("report.json");
    let (stdout, _, code) = run(&[
        "verify",
        "--check",
        "gaxit-two-forms",
        "--backend",
        "eval",
        "--max-length",
        "3",
        "--points",
        "8",
        "--seed",
        "42",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0), "stdout: {stdout}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"check\":\"gaxit-two-forms\""));
    assert!(text.contains("\"backend\":\"eval\""));
    assert!(text.contains("\"seed\":42"));
    assert!(text.contains("\"status\":\"pass\""));
    // Stable schema keys in order.
    let start = text.find("{\"check\"").unwrap();
    assert!(text[start..].starts_with("{\"check\":"));
}

#[test]
fn verify_unknown_check_fails() {
    let (_, stderr, code) = run(&["verify", "--check", "does-not-exist"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("unknown check"));
}

#[test]
fn verify_unsupported_backend_is_skipped_with_exit_two() {
    let (stdout, _, code) = run(&["verify", "--check", "tripartite", "--backend", "eval"]);
    assert_eq!(code, Some(2), "stdout: {stdout}");
    assert!(stdout.contains("skipped"));
}

#[test]
fn verify_list_names_the_catalogue() {
    let (stdout, _, code) = run(&["verify", "--list"]);
    assert_eq!(code, Some(0));
    for name in ["separation-lemma", "gantar-doss", "fundamental-identity", "darapal"] {
        assert!(stdout.contains(name), "missing {name}");
    }
}

#[test]
fn flexion_prime_env_overrides_modulus() {
    let out = flexion()
        .args(["verify", "--check", "negpush", "--backend", "eval", "--max-length", "3"])
        .env("FLEXION_PRIME", "2305843009213693951")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = flexion()
        .args(["verify", "--check", "negpush", "--backend", "eval", "--max-length", "3"])
        .env("FLEXION_PRIME", "42")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad evaluation modulus"));
}

#[test]
fn show_prints_canonical_components() {
    let (stdout, _, code) = run(&["show", "--bimould", "es", "--unit", "polar-u", "--length", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "1 / (u1^2 + u1*u2)");
    let (stdout, _, _) = run(&["show", "--bimould", "ez", "--unit", "polar-u", "--length", "3"]);
    assert_eq!(stdout.trim(), "1 / (u1*u2*u3)");
    let (stdout, _, _) = run(&["show", "--bimould", "oz", "--unit", "polar-u", "--length", "2"]);
    assert_eq!(stdout.trim(), "1 / (v1*v2)");
    let (stdout, _, _) = run(&["show", "--bimould", "re:1", "--unit", "polar-v", "--length", "1"]);
    assert_eq!(stdout.trim(), "1 / (v1)");
}

#[test]
fn lengths_beyond_the_packed_budget_are_rejected() {
    let (_, stderr, code) = run(&["show", "--bimould", "ez", "--length", "9"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("capped at 8"));
    let (_, stderr, code) = run(&["verify", "--check", "negpush", "--max-length", "12"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("capped at 8"));
}

#[test]
fn show_rejects_unknown_bimould() {
    let (_, stderr, code) = run(&["show", "--bimould", "nope", "--length", "2"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("unknown bimould"));
}

#[test]
fn giff_operations_print_exact_rationals() {
    // Composition of x/(1-x) with itself: x/(1-2x), coefficients 2^r.
    let (stdout, _, code) = run(&[
        "giff", "--op", "compose", "--coeffs", "1,1,1,1", "--coeffs2", "1,1,1,1", "--order", "5",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "2,4,8,16");
    // Inverse of re(x) = 1 - exp(-x) is -log(1-x): a_r = 1/(r+1).
    let (stdout, _, _) = run(&[
        "giff", "--op", "inverse", "--coeffs", "-1/2,1/6,-1/24,1/120,-1/720", "--order", "6",
    ]);
    assert_eq!(stdout.trim(), "1/2,1/3,1/4,1/5,1/6");
    // exp of x^2 d/dx: the geometric series.
    let (stdout, _, _) = run(&["giff", "--op", "exp", "--coeffs", "1", "--order", "6"]);
    assert_eq!(stdout.trim(), "1,1,1,1,1");
    // log is the inverse of exp.
    let (stdout, _, _) = run(&["giff", "--op", "log", "--coeffs", "1,1,1,1,1", "--order", "6"]);
    assert_eq!(stdout.trim(), "1,0,0,0,0");
    // Dilator of -log(1-x): gamma_r = 1/(r(r+1)).
    let (stdout, _, _) = run(&[
        "giff", "--op", "dilator", "--coeffs", "1/2,1/3,1/4,1/5,1/6,1/7", "--order", "7",
    ]);
    assert_eq!(stdout.trim(), "1/2,1/6,1/12,1/20,1/30,1/42");
}

#[test]
fn giff_coproduct_matches_composition_coefficients() {
    let (compose, _, _) = run(&[
        "giff", "--op", "compose", "--coeffs", "2,-1,3", "--coeffs2", "1,2,-2", "--order", "5",
    ]);
    let (pairing, _, code) = run(&[
        "giff", "--op", "coproduct", "--coeffs", "2,-1,3", "--coeffs2", "1,2,-2", "--order", "5",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(compose.trim(), pairing.trim());
}

#[test]
fn custom_unit_roundtrip_and_rejection() {
    let dir = std::env::temp_dir().join("flexion-cli-unit");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "1 / u1\n").unwrap();
    let spec = format!("custom:{}", good.display());
    let (stdout, _, code) = run(&["show", "--bimould", "oz", "--unit", &spec, "--length", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "1 / (v1*v2)");
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "u1 + v1\n").unwrap();
    let spec = format!("custom:{}", bad.display());
    let (_, stderr, code) = run(&["show", "--bimould", "ez", "--unit", &spec, "--length", "1"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("unit error") || stderr.contains("tripartite"), "stderr: {stderr}");
}

#[test]
fn verify_reports_are_reproducible_given_a_seed() {
    let args = [
        "verify", "--check", "gantar-doss", "--backend", "eval", "--max-length", "4",
        "--points", "8", "--seed", "9",
    ];
    let dir = std::env::temp_dir().join("flexion-cli-repro");
    std::fs::create_dir_all(&dir).unwrap();
    let r1 = dir.join("r1.json");
    let r2 = dir.join("r2.json");
    let (_, _, c1) = run(&[&args[..], &["--report", r1.to_str().unwrap()]].concat());
    let (_, _, c2) = run(&[&args[..], &["--report", r2.to_str().unwrap()]].concat());
    assert_eq!(c1, Some(0));
    assert_eq!(c2, Some(0));
    let a = std::fs::read_to_string(&r1).unwrap();
    let b = std::fs::read_to_string(&r2).unwrap();
    // Timing is the only field free to vary between runs.
    let strip = |s: &str| regex_lite_strip_wall(s);
    assert_eq!(strip(&a), strip(&b));
}

fn regex_lite_strip_wall(s: &str) -> String {
    let start = s.find("\"wall_ms\":").expect("report has wall_ms");
    let end = s[start..].find(',').map(|i| start + i).unwrap_or(s.len());
    format!("{}{}", &s[..start], &s[end..])
}
