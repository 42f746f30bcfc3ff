use std::path::PathBuf;
use std::process::Command;

use manin_cli::{run, Outcome, Verbosity};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn manin(args: &[&str]) -> Outcome {
    run(std::iter::once("manin").chain(args.iter().copied()), Verbosity::Normal)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({}): {}", e, out.stdout))
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    use std::io::Write;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_jacobi_on_gl2_half() {
    let out = manin(&["check-jacobi", &data("gl2_plus.alg")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("jacobi"));
}

#[test]
fn check_jacobi_failure_exits_one() {
    let f = write_temp("algebra bad dim 3\nbasis a b c\n[a,b] = a\n[a,c] = a\n[b,c] = c\n");
    let out = manin(&["--json", "check-jacobi", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert_eq!(v["checks"][0]["counterexamples"][0]["indices"], serde_json::json!([0, 1, 2]));
}

#[test]
fn compat_and_double_on_gl2_files() {
    let (plus, minus) = (data("gl2_plus.alg"), data("gl2_minus.alg"));
    assert_eq!(manin(&["compat", "--plus", &plus, "--minus", &minus]).code, 0);
    let out = manin(&["double", "--plus", &plus, "--minus", &minus]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("algebra double dim 6\nbasis Z1 Z2 Z3 z1 z2 z3\n"), "{}", out.stdout);
    assert!(out.stdout.contains("[Z3,z3] = 1/2*sqrt2*Z1 - 1/2*sqrt2*Z2 + 1/2*sqrt2*z1 - 1/2*sqrt2*z2"), "{}", out.stdout);
    let v = json(&manin(&["double", "--json", "--plus", &plus, "--minus", &minus]));
    assert_eq!(v["algebra"]["basis"].as_array().unwrap().len(), 6);
}

#[test]
fn compat_reports_located_residual() {
    let broken = write_temp("algebra s_minus dim 3\nbasis z1 z2 z3\n[z1,z2] = z3\n[z1,z3] = -1/sqrt2*z3\n[z2,z3] = 1/sqrt2*z3\n");
    let out = manin(&["--json", "compat", "--plus", &data("gl2_plus.alg"), "--minus", broken.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    let ces = v["checks"][0]["counterexamples"].as_array().unwrap();
    assert!(ces.iter().any(|c| c["indices"] == serde_json::json!([0, 1, 0, 2])), "{}", out.stdout);
}

#[test]
fn gln_delta_json_has_golden_coefficients() {
    let out = manin(&["gln", "--n", "2", "--emit", "delta", "--json"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    let f12 = v["delta"]["values"].as_array().unwrap().iter().find(|g| g["generator"] == "F12").unwrap();
    let coeff = |l: &str, r: &str| {
        f12["terms"].as_array().unwrap().iter().find(|t| t["left"] == l && t["right"] == r).map(|t| t["coeff"].as_str().unwrap().to_string())
    };
    assert_eq!(coeff("F12", "H1").as_deref(), Some("-1/2"));
    assert_eq!(coeff("F12", "I1").as_deref(), Some("-1/2*i"));
    assert_eq!(coeff("F12", "H2").as_deref(), Some("1/2"));
    assert_eq!(coeff("F12", "I2").as_deref(), Some("1/2*i"));
}

#[test]
fn gln_emits_algebras_and_rmatrix() {
    let out = manin(&["gln", "--n", "2", "--emit", "splus"]);
    assert_eq!(out.stdout, "algebra s_plus dim 3\nbasis X1 X2 Y12\n[X1,Y12] = 1/2*sqrt2*Y12\n[X2,Y12] = -1/2*sqrt2*Y12\n");
    let out = manin(&["gln", "--n", "2", "--emit", "sminus"]);
    assert!(out.stdout.contains("[x1,y12] = -1/2*sqrt2*y12"));
    let out = manin(&["gln", "--n", "2", "--emit", "rmatrix"]);
    assert!(out.stdout.contains("r_t = 1/2*i*H1^I1 + 1/2*i*H2^I2"), "{}", out.stdout);
    let out = manin(&["gln", "--n", "3", "--emit", "double"]);
    assert!(out.stdout.starts_with("algebra double dim 12\n"));
    assert_eq!(manin(&["gln", "--n", "2", "--emit", "report"]).code, 0);
}

#[test]
fn verify_rank_one_and_two() {
    let out = manin(&["verify", "--n", "1"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = manin(&["verify", "--n", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("all 18 checks passed\n"));
}

#[test]
fn verify_json_is_deterministic() {
    let a = manin(&["verify", "--n", "2", "--json"]);
    let b = manin(&["verify", "--n", "2", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], "manin-report/1");
    assert_eq!(v["command"], "verify --n 2 --json");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["millis"] == 0));
}

#[test]
fn verbosity_levels() {
    let quiet = run(["manin", "verify", "--n", "2"], Verbosity::Quiet);
    assert_eq!(quiet.stdout, "all 18 checks passed\n");
    let verbose = run(["manin", "verify", "--n", "2"], Verbosity::Verbose);
    assert!(verbose.stdout.contains("note: discrepancy"));
    assert_eq!(Verbosity::from_env_value(Some("verbose")), Verbosity::Verbose);
    assert_eq!(Verbosity::from_env_value(None), Verbosity::Normal);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(manin(&["frobnicate"]).code, 2);
    assert_eq!(manin(&["verify"]).code, 2);
    assert_eq!(manin(&["verify", "--n", "0"]).code, 2);
    assert_eq!(manin(&["gln", "--n", "2", "--emit", "nothing"]).code, 2);
    assert_eq!(manin(&["check-jacobi", "/nonexistent/file.alg"]).code, 2);
    let f = write_temp("algebra a dim 2\nbasis u v\n[u,w] = v\n");
    let out = manin(&["check-jacobi", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains(":3:4: unknown label 'w'"), "{}", out.stderr);
    let out = manin(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_manin");
    let ok = Command::new(bin).args(["verify", "--n", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["verify", "--n", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let timed = Command::new(bin).args(["verify", "--n", "2", "--json"]).env("MANIN_VERBOSITY", "verbose").output().unwrap();
    assert_eq!(timed.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 18);
}
