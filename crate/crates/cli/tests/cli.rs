use std::process::{Command, Output};

use macpieri_core::render::{PieriDoc, RecurrenceDoc};
use macpieri_core::ring::parse_rational;
use macpieri_core::{Partition, QtRational, SymPoly};

fn macpieri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macpieri")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = macpieri(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn r(s: &str) -> QtRational {
    parse_rational(s).unwrap()
}

#[test]
fn two_row_polynomial_as_json() {
    let out = stdout(&["poly", "--partition", "2", "--vars", "2", "--format", "json"]);
    let p: SymPoly = serde_json::from_str(&out).unwrap();
    assert_eq!(p.coeff(&Partition::row(2)), r("1"));
    assert_eq!(p.coeff(&Partition::new(vec![1, 1]).unwrap()), r("(1+q)*(1-t)/(1-q*t)"));
    // big integers travel as strings
    let raw: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(raw["terms"][1]["coeff"]["num"].is_string());
}

#[test]
fn schur_specialization() {
    let out = stdout(&["poly", "--partition", "2,1", "--vars", "3", "--q-equals-t"]);
    assert_eq!(out, "(2,1) 1\n(1,1,1) 2\n");
}

#[test]
fn square_of_first_fundamental() {
    let out = stdout(&["pieri", "--n", "1", "--weight", "1", "--r", "1", "--format", "json"]);
    let doc: PieriDoc = serde_json::from_str(&out).unwrap();
    let coeffs: Vec<QtRational> = doc.terms.iter().map(|t| t.coeff.clone()).collect();
    assert_eq!(coeffs, vec![r("1"), r("(1-q)*(1+t)/(1-q*t)")]);
    let latex = stdout(&["pieri", "--n", "1", "--weight", "1", "--r", "1", "--format", "latex"]);
    assert_eq!(latex.trim(), "P_{2\\omega_{1}} + \\frac{(1-q)(1+t)}{1-qt}");
}

#[test]
fn reduced_pieri_matches_full() {
    let full: PieriDoc =
        serde_json::from_str(&stdout(&["pieri", "--n", "2", "--weight", "1,0", "--r", "2", "--format", "json"])).unwrap();
    let red: PieriDoc = serde_json::from_str(&stdout(&[
        "pieri", "--n", "2", "--weight", "1,0", "--r", "2", "--k", "2", "--format", "json",
    ]))
    .unwrap();
    let mut a: Vec<_> = full.terms.iter().map(|t| (t.target.clone(), t.coeff.clone())).collect();
    let mut b: Vec<_> = red.terms.iter().map(|t| (t.target.clone(), t.coeff.clone())).collect();
    a.sort_by(|x, y| x.0.cmp(&y.0));
    b.sort_by(|x, y| x.0.cmp(&y.0));
    assert_eq!(a, b);
}

#[test]
fn recurrence_round_trips() {
    let out = stdout(&["recur", "--n", "2", "--weight", "1,2", "--k", "2", "--format", "json"]);
    let doc: RecurrenceDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap(), out.trim_end());
    assert!(doc.terms.iter().all(|t| t.target.get(2) == 0));
}

#[test]
fn matinv_report() {
    let out = stdout(&["matinv", "--n", "1", "--k", "2", "--r", "1", "--box", "0..3", "--symbolic"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pairs_checked"], 10);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let args = ["matinv", "--n", "2", "--k", "3", "--r", "2", "--box", "0,0..1,1", "--trials", "2", "--rng-seed", "7"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn verify_small_sweep_is_deterministic() {
    let args = ["verify", "--suite", "all", "--max-size", "4"];
    let a = stdout(&args);
    assert!(a.trim_end().ends_with("0 failed, 0 skipped"), "{a}");
    let threaded = Command::new(env!("CARGO_BIN_EXE_macpieri")).args(args).env("MACPIERI_THREADS", "2").output().unwrap();
    assert_eq!(String::from_utf8(threaded.stdout).unwrap(), a);
}

#[test]
fn verify_json_totals() {
    let out = stdout(&["verify", "--suite", "closedforms,matinv", "--max-size", "3", "--max-theta", "2", "--box-hi", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let cells = v["cells"].as_array().unwrap();
    let pass = cells.iter().filter(|c| c["status"] == "pass").count();
    assert_eq!(v["totals"]["pass"], pass);
    assert_eq!(v["totals"]["fail"], 0);
    assert_eq!(v["suite"], "closedforms,matinv");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["pieri", "--n", "2", "--weight", "1", "--r", "1"],
        vec!["pieri", "--n", "1", "--weight", "1", "--r", "1", "--bogus"],
        vec!["recur", "--n", "2", "--weight", "1,0", "--k", "3"],
        vec!["verify", "--suite", "everything"],
        vec!["matinv", "--n", "2", "--k", "1", "--r", "1", "--box", "0..2"],
        vec!["poly", "--partition", "1,2", "--vars", "2"],
    ] {
        assert_eq!(macpieri(&args).status.code(), Some(2), "{args:?}");
    }
    let bad = Command::new(env!("CARGO_BIN_EXE_macpieri"))
        .args(["pieri", "--n", "1", "--weight", "1", "--r", "1"])
        .env("MACPIERI_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
