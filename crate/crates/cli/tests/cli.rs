use std::path::PathBuf;
use std::process::Command;

use qhyper::parse_ratx;
use qhyper_cli::{run, Outcome};
use serde_json::Value;

fn qh(args: &[&str]) -> Outcome {
    run(std::iter::once("qhyper").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = qh(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn classify_qx_is_a_theta_case() {
    let v = json(&["classify", "q*x"]);
    let r = &v["result"];
    assert_eq!(r["verdict"], "DifferentiallyAlgebraic");
    assert_eq!(r["mu"], "q");
    assert_eq!(r["r"], 1);
    assert_eq!(r["delta_constant"], true);
    assert_eq!(r["certificate"], "theta_q(x)");
}

#[test]
fn theta_window_eight() {
    let v = json(&["theta-verify", "--window", "8"]);
    assert_eq!(v["result"]["functional_eq"], true);
    assert_eq!(v["result"]["heat_eq"], true);
    assert!(v["warnings"][0].as_str().unwrap().contains("convention"));
}

#[test]
fn telescope_one_hits_the_constant_term() {
    let v = json(&["telescope", "1"]);
    assert_eq!(v["result"]["found"], false);
    assert_eq!(v["result"]["obstruction"], "constant-term");
}

#[test]
fn telescope_finds_a_coboundary() {
    // f = 1/(x - 1), g = f(qx) - f(x)
    let v = json(&["telescope", "1/(q*x - 1) - 1/(x - 1)"]);
    assert_eq!(v["result"]["found"], true);
    let f = parse_ratx(v["result"]["f"].as_str().unwrap()).unwrap();
    let g = parse_ratx("1/(q*x - 1) - 1/(x - 1)").unwrap();
    assert_eq!(&f.sigma_q() - &f, g);
}

#[test]
fn fresh_pole_is_hypertranscendent() {
    let v = json(&["classify", "q/(x - 7)"]);
    assert_eq!(v["result"]["verdict"], "Hypertranscendent");
    assert!(!v["result"]["obstruction"].as_array().unwrap().is_empty());
}

#[test]
fn leading_minus_is_an_expression_not_a_flag() {
    let v = json(&["classify", "-q*x"]);
    assert_eq!(v["result"]["mu"], "-q");
    assert_eq!(v["result"]["delta_constant"], false);
}

#[test]
fn dispersion_and_orbit_reduce() {
    let v = json(&["dispersion", "(x - 1)*(x - q^3)", "x - q"]);
    assert_eq!(v["result"]["shifts"], serde_json::json!([-2, 1]));
    let v = json(&["orbit-reduce", "(x - q)/(x - 1)"]);
    assert_eq!(v["result"]["monomial"], true);
    assert_eq!(v["result"]["mu"], "q");
}

#[test]
fn integrability_both_polarities() {
    let v = json(&["integrable", "q^2"]);
    assert_eq!(v["result"]["found"], true);
    assert_eq!(v["result"]["b"], serde_json::json!([["0"]]));
    let v = json(&["integrable", "q*x", "--degbound", "4"]);
    assert_eq!(v["result"]["found"], false);
    let v = json(&["integrable", "q,0;0,q*x", "--degbound", "2"]);
    assert_eq!(v["result"]["found"], false);
}

#[test]
fn ell_and_prolong_checks() {
    let v = json(&["ell-verify", "--jmax", "2", "--li", "-3"]);
    assert_eq!(v["result"]["heat_identity"], true);
    assert_eq!(v["result"]["polar_leading_ok"], true);
    let v = json(&["ell-verify", "--jmax", "0", "--mu", "q^3"]);
    assert_eq!(v["result"]["mu_telescoper"], "3*l");
    assert_eq!(v["result"]["mu_half_form_holds"], false);
    let v = json(&["prolong-check", "1,x;0,q", "--order", "2", "--derivations", "2"]);
    assert_eq!(v["result"]["all_hold"], true);
}

#[test]
fn usage_and_parse_errors_exit_one() {
    for args in [
        &["classify", "q*x +"][..],
        &["classify", "1/(x - x)"],
        &["classify", "0"],
        &["bogus"],
        &["theta-verify", "--window", "0"],
        &["dispersion", "1/x", "x"],
        &["integrable", "1,2;2,4"],
        &["classify", "q*x", "--format", "yaml"],
    ] {
        let out = qh(args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty() && !out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(qh(&["--help"]).code, 0);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["classify", "(1 - q*x)/(1 - x)"][..],
        &["orbit-reduce", "x^2*(x - q^2)/(x - 1)"],
        &["ell-verify", "--format", "text"],
    ] {
        assert_eq!(qh(args), qh(args), "{args:?}");
    }
}

#[test]
fn printed_values_parse_back() {
    let v = json(&["orbit-reduce", "(x^2 - q)*(x + 2)/((q^2*x^2 - q)*(x - 3/q))"]);
    let a = parse_ratx("(x^2 - q)*(x + 2)/((q^2*x^2 - q)*(x - 3/q))").unwrap();
    assert_eq!(parse_ratx(v["input"]["a"].as_str().unwrap()).unwrap(), a);
    let at = parse_ratx(v["result"]["atilde"].as_str().unwrap()).unwrap();
    let f = parse_ratx(v["result"]["f"].as_str().unwrap()).unwrap();
    assert_eq!(&at * &f.sigma_q(), &a * &f);
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Set `QHYPER_BLESS=1` to rewrite the files after an intended change.
#[test]
fn golden_reports() {
    let cases: [(&str, &[&str]); 6] = [
        ("classify_qx.json", &["classify", "q*x"]),
        ("classify_fresh_pole.json", &["classify", "q/(x - 7)"]),
        ("telescope_one.json", &["telescope", "1"]),
        ("theta_window_8.json", &["theta-verify", "--window", "8"]),
        ("dispersion.json", &["dispersion", "(x - 1)*(x - q^3)", "x - q"]),
        ("ell_verify.txt", &["ell-verify", "--format", "text"]),
    ];
    let bless = std::env::var_os("QHYPER_BLESS").is_some();
    for (name, args) in cases {
        let out = qh(args);
        assert_eq!(out.code, 0, "{name}");
        let path = golden_dir().join(name);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(out.stdout, want, "{name} drifted from its golden file");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qhyper");
    let ok = Command::new(bin).args(["telescope", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["version"], 1);
    assert!(v["anchor"].is_string());
    let bad = Command::new(bin).args(["telescope", "(("]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position"));
}
