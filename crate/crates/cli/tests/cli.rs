use std::path::Path;
use std::process::{Command, Output};

use mu_domains::report::parse_orbit_csv;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mu-domains"))
        .args(args)
        .env_remove("MU_DOMAINS_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn envelope(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json envelope")
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn member_exit_codes() {
    let inside = run(&["member", "g2", "0", "0", "-0.25", "0"]);
    assert_eq!(code(&inside), 0);
    let env = envelope(&inside);
    assert_eq!(env["tool"], "mu-domains");
    assert_eq!(env["payload"]["verdict"]["status"], "inside");
    assert!((env["payload"]["verdict"]["margin"].as_f64().unwrap() - 0.75).abs() < 1e-12);

    let outside = run(&["member", "g2", "3", "0", "0", "0"]);
    assert_eq!(code(&outside), 1);

    let boundary = run(&["member", "g2", "2", "0", "1", "0"]);
    assert_eq!(code(&boundary), 2);
}

#[test]
fn member_tetra_margin() {
    let out = run(&["member", "tetra", "0.5", "0", "0.5", "0", "0.25", "0"]);
    assert_eq!(code(&out), 0);
    let margin = envelope(&out)["payload"]["verdict"]["margin"].as_f64().unwrap();
    assert!((margin - 0.375).abs() < 1e-12, "{margin}");
}

#[test]
fn beta_variant_is_echoed() {
    let out = run(&["--beta-variant", "literature", "member", "penta", "0", "0", "0", "0", "0", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(envelope(&out)["config"]["beta_variant"], "literature");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["member", "g2", "0", "0", "0"])), 64);
    assert_eq!(code(&run(&["orbit", "chain[identity g2"])), 64);
    assert_eq!(code(&run(&["orbit", "aut g2 h=mobius(0,2,0)"])), 64);
    assert_eq!(code(&run(&["--tol-bogus", "1", "member", "g2", "0", "0", "0", "0"])), 64);
    assert_eq!(code(&run(&["--format", "csv", "member", "g2", "0", "0", "0", "0"])), 64);
}

#[test]
fn tolerance_override_reaches_config() {
    let out = run(&["--tol-fixed-residual", "1e-8", "member", "g2", "0", "0", "0", "0"]);
    assert_eq!(code(&out), 0);
    let tol = &envelope(&out)["config"]["tolerances"];
    assert_eq!(tol["fixed_residual"].as_f64(), Some(1e-8));
    assert_eq!(tol["newton_residual"].as_f64(), Some(1e-12));
}

#[test]
fn hyperbolic_orbit_diverges_to_royal_point() {
    let out = run(&["orbit", "aut g2 h=mobius(0,-0.5,0)"]);
    assert_eq!(code(&out), 0);
    let verdict = &envelope(&out)["payload"]["verdict"];
    assert_eq!(verdict["kind"]["tag"], "boundary_divergent");
    let tail = &verdict["kind"]["tail"][0];
    let s = tail[0][0].as_f64().unwrap();
    let p = tail[1][0].as_f64().unwrap();
    assert!((s - 2.0).abs() < 1e-6 && (p - 1.0).abs() < 1e-6, "{s} {p}");
}

#[test]
fn orbit_csv_round_trips() {
    let out = run(&["--format", "csv", "orbit", "aut g2 h=mobius(0,-0.5,0)", "--start", "0.1", "0.2", "0", "0.05"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("step,re0,im0,re1,im1,margin\n"));
    let rows = parse_orbit_csv(&text).unwrap();
    assert!(rows.len() > 2);
    let first = rows[0].point.coords();
    assert_eq!((first[0].re, first[0].im, first[1].re, first[1].im), (0.1, 0.2, 0.0, 0.05));
    for (line, row) in text.lines().skip(1).zip(&rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0].parse::<usize>().unwrap(), row.step);
        assert_eq!(fields.last().unwrap().parse::<f64>().unwrap(), row.margin);
    }
}

#[test]
fn identity_and_penta_orbits() {
    let id = run(&["orbit", "identity g2", "--start", "0.1", "0", "0.2", "0"]);
    assert_eq!(code(&id), 0);
    let verdict = &envelope(&id)["payload"]["verdict"];
    assert_eq!(verdict["kind"]["tag"], "converged_fixed_point");
    assert_eq!(verdict["steps"], 1);

    let fixed = run(&["orbit", "aut penta omega=1 gamma=rot(1)"]);
    assert_eq!(envelope(&fixed)["payload"]["verdict"]["kind"]["tag"], "converged_fixed_point");
    let periodic = run(&["orbit", "aut penta omega=pi gamma=mobius(pi,0.3,0.1)"]);
    assert_eq!(envelope(&periodic)["payload"]["verdict"]["kind"]["tag"], "periodic");
}

#[test]
fn scan_is_clean_and_worker_independent() {
    let base = run(&["--seed", "42", "scan", "g2", "random-aut", "200"]);
    assert_eq!(code(&base), 0);
    let env = envelope(&base);
    assert_eq!(env["payload"]["violations"].as_array().unwrap().len(), 0);
    let base = without_timestamp(env);
    for workers in ["4", "8"] {
        let other = run(&["--seed", "42", "scan", "g2", "random-aut", "200", "--workers", workers]);
        assert_eq!(without_timestamp(envelope(&other)), base);
    }
}

#[test]
fn fixset_of_minus_identity() {
    let out = run(&["fixset", "aut g2 h=mobius(pi,0,0)"]);
    assert_eq!(code(&out), 0);
    let payload = &envelope(&out)["payload"];
    assert_eq!(payload["classification"]["kind"], "minus_i");
    assert_eq!(payload["retract"], true);
}

#[test]
fn target_of_hyperbolic_lift() {
    let out = run(&["target", "aut g2 h=mobius(0,0.5,0)"]);
    assert_eq!(code(&out), 0);
    let payload = &envelope(&out)["payload"];
    assert_eq!(payload["property"]["kind"], "royal_circle");
}

#[test]
fn quick_verify_passes() {
    let out = run(&["verify", "membership", "--quick"]);
    assert_eq!(code(&out), 0);
    assert_eq!(envelope(&out)["payload"]["passed"], true);
    assert_eq!(code(&run(&["verify", "nonsense", "--quick"])), 64);
}

#[test]
fn out_file_and_seed_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verdict.json");
    let out = Command::new(env!("CARGO_BIN_EXE_mu-domains"))
        .args(["--out", path.to_str().unwrap(), "member", "g2", "0", "0", "0", "0"])
        .env("MU_DOMAINS_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let env: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(env["config"]["seed"], 7);
    assert_eq!(env["config"]["out"], path.to_str().unwrap());
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
    assert!(Path::new(&path).exists());
}
