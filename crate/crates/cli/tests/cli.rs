use std::path::PathBuf;
use std::process::Command;

use polyterm_cli::{run_cli, CliReport, Status};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> CliReport {
    run_cli(std::iter::once("polyterm").chain(args.iter().copied()))
}

fn first_line(r: &CliReport) -> &str {
    r.stdout.lines().next().unwrap_or_default()
}

fn single_f() -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("single_f.trs");
    std::fs::write(&path, "(VAR x)\n(RULES\n  f(x) -> x\n)\n").unwrap();
    let p = path.to_string_lossy().into_owned();
    (dir, p)
}

#[test]
fn check_accepts_direct_certificate() {
    let r = run(&["check", "--trs", &data("r1.trs"), "--cert", &data("r1_nat.cert")]);
    assert_eq!(r.exit_code(), 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(first_line(&r), "VERDICT accepted");
    let rules: Vec<&str> = r.stdout.lines().filter(|l| l.trim_start().starts_with("RULE ")).collect();
    assert_eq!(rules.len(), 12);
    assert!(rules.iter().all(|l| l.ends_with("strict proved")));
    assert!(!r.stdout.contains("FAIL"));
}

#[test]
fn check_reports_failing_site_with_witness() {
    let r = run(&["check", "--trs", &data("r1.trs"), "--cert", &data("r1_nat_as_q.cert")]);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(first_line(&r), "VERDICT rejected");
    assert!(r.stdout.contains("  FAIL well-definedness of f\n"));
    assert!(r.stdout.contains("2*x1^2 - x1 >= 0"));
    assert!(r.stdout.contains("witness x1=1/4 value -1/8"));
    assert!(r.stdout.contains("SITE well-definedness of f"));
}

#[test]
fn check_renders_the_broken_inequality() {
    let r = run(&["check", "--trs", &data("r1.trs"), "--cert", &data("r1_nat_broken.cert")]);
    assert_eq!(r.exit_code(), 1);
    assert!(r.stdout.contains("RULE 7 strict disproved"));
    assert!(r.stdout.contains("f(g(x)) -> g(g(f(x)))"));
    assert!(r.stdout.contains(">="));
}

#[test]
fn check_incremental_certificate() {
    let r = run(&["check", "--trs", &data("r5.trs"), "--cert", &data("r5_real_incremental.cert")]);
    assert_eq!(r.exit_code(), 0, "{}", r.stdout);
    assert!(r.stdout.contains("  STEP 1 REMOVE"));
    assert!(r.stdout.contains("  STEP 2 REMOVE"));
    assert!(r.stdout.contains("weak proved"));
    assert!(r.stdout.contains("REMAINING 0"));

    let r = run(&["check", "--trs", &data("r6.trs"), "--cert", &data("r6_nat_incremental_broken.cert")]);
    assert_eq!(r.exit_code(), 1);
    assert!(r.stdout.contains("SITE step 2: strict compatibility of rule 3"));
}

#[test]
fn check_against_selected_rules() {
    let args = ["check", "--trs", &data("r1.trs"), "--cert", &data("r1_residual_nat.cert")];
    assert_eq!(run(&args).exit_code(), 1);
    let mut with_rules = args.to_vec();
    with_rules.extend(["--rules", "2,8,12"]);
    assert_eq!(run(&with_rules).exit_code(), 0);
    with_rules[6] = "13";
    assert_eq!(run(&with_rules).exit_code(), 3);
}

#[test]
fn prove_single_rule() {
    let (_dir, trs) = single_f();
    let r = run(&["prove", "--trs", &trs, "--domain", "N", "--max-degree", "1", "--max-coeff", "2"]);
    assert_eq!(r.exit_code(), 0);
    assert_eq!(first_line(&r), "VERDICT accepted");
    assert!(r.stdout.contains("(f (x1) x1 + 1)"), "{}", r.stdout);
}

#[test]
fn prove_writes_a_checkable_certificate() {
    let (dir, trs) = single_f();
    let out = dir.path().join("found.cert").to_string_lossy().into_owned();
    let r = run(&["prove", "--trs", &trs, "--domain", "Q", "--denoms", "1,2", "--delta", "1/2,1", "--out", &out]);
    assert_eq!(r.exit_code(), 0);
    assert!(r.stdout.contains("WROTE"));
    let c = run(&["check", "--trs", &trs, "--cert", &out]);
    assert_eq!(c.exit_code(), 0, "{}", c.stdout);
}

#[test]
fn prove_incremental() {
    let r = run(&[
        "prove", "--trs", &data("r1.trs"), "--domain", "Q", "--incremental", "--max-coeff", "5", "--denoms", "1,2",
        "--degree", "s=1,g=1,h=1",
    ]);
    assert_eq!(r.exit_code(), 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("FOUND 2 STEPS"));
    assert!(r.stdout.contains("(STEPS"));
}

#[test]
fn prove_reports_exhaustion_and_budget() {
    let r = run(&["prove", "--trs", &data("r3.trs"), "--domain", "N", "--max-coeff", "4", "--exhaust"]);
    assert_eq!(r.exit_code(), 1);
    assert!(r.stdout.lines().nth(1).unwrap().trim_start().starts_with("EXHAUSTED DOMAIN N"));
    assert!(r.stdout.contains("CERTS 0"));

    let r = run(&["prove", "--trs", &data("r3.trs"), "--domain", "N"]);
    assert_eq!(r.exit_code(), 1);
    assert_eq!(first_line(&r), "VERDICT rejected");

    let r = run(&["prove", "--trs", &data("r1.trs"), "--domain", "N", "--max-nodes", "10"]);
    assert_eq!(r.exit_code(), 2);
    assert_eq!(first_line(&r), "VERDICT unknown");
}

#[test]
fn usage_and_input_errors_exit_3() {
    let (_dir, trs) = single_f();
    let (r1, r3_cert) = (data("r1.trs"), data("r3_q.cert"));
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["check", "--trs", &trs],
        vec!["check", "--trs", &trs, "--cert", "/nonexistent/x.cert"],
        vec!["check", "--trs", &trs, "--cert", &trs],
        // The certificate does not interpret every symbol.
        vec!["check", "--trs", &r1, "--cert", &r3_cert],
        vec!["prove", "--trs", &trs, "--domain", "Z"],
        vec!["prove", "--trs", &trs, "--domain", "N", "--max-degree", "3"],
        vec!["prove", "--trs", &trs, "--domain", "N", "--bogus"],
        vec!["parse", "/nonexistent.trs"],
        vec!["corpus", "show", "nope.trs"],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.status, Status::Error, "{args:?}: {}", r.stdout);
        assert_eq!(r.exit_code(), 3);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let r = run(&["--help"]);
    assert_eq!(r.exit_code(), 0);
    assert!(r.stdout.contains("prove"));
}

#[test]
fn parse_prints_the_system() {
    let r = run(&["parse", &data("r3.trs")]);
    assert_eq!(r.exit_code(), 0);
    assert!(r.stdout.contains("RULES 1"));
    assert!(r.stdout.contains("f(a) -> f(g(a))"));
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "(VAR x) (RULES x -> f(x))").unwrap();
    assert_eq!(run(&["parse", &bad.path().to_string_lossy()]).exit_code(), 3);
}

#[test]
fn corpus_verify_passes() {
    let r = run(&["corpus", "verify"]);
    assert_eq!(r.exit_code(), 0, "{}", r.stdout);
    assert!(r.stdout.trim_end().ends_with("22 checked, 0 failed"));
    assert_eq!(run(&["corpus", "show", "r3.trs"]).exit_code(), 0);
}

#[test]
fn reports_are_stable() {
    let args = ["check", "--trs", &data("r2.trs"), "--cert", &data("r2_real.cert")];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.exit_code(), b.exit_code());
}

#[test]
fn binary_exit_code_and_streams() {
    let out = Command::new(env!("CARGO_BIN_EXE_polyterm"))
        .args(["check", "--trs", &data("r1.trs"), "--cert", &data("r1_nat_as_q.cert")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("VERDICT rejected\n"));
    assert!(!stdout.contains("time"));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("time "));
}
