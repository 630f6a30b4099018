use std::process::{Command, Output};

use fuzzsuper::oracle::SuperPoly;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzsuper")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn verify_harmonics_passes() {
    let o = run(&["verify", "--q", "3", "--suite", "harmonics"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 of 3 checks passed"));
}

#[test]
fn verify_reports_every_residual() {
    let v = json(&["verify", "--q-list", "1,2", "--format", "json", "--seed", "11"]);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    for c in checks {
        assert!(c["residual"].as_f64().unwrap() <= c["tol"].as_f64().unwrap());
    }
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--q", "2", "--format", "csv"]);
    let b = run(&["verify", "--q", "2", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_fails_under_impossible_tolerance() {
    let o = run(&["verify", "--q", "1", "--suite", "casimir", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn zero_level_is_a_usage_error() {
    let o = run(&["verify", "--q", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn large_levels_need_a_flag() {
    assert_eq!(run(&["converge", "--q", "61"]).status.code(), Some(2));
    let o = run(&["converge", "--q", "61", "--allow-large", "--j1", "0", "--j2", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn converge_csv_round_trips() {
    let o = run(&["converge", "--q-list", "2,10", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j1,j2,q,c_q,c_classical,delta,residual"));
    let mut rows = 0;
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f.len(), 7);
        assert_eq!((f[3] - f[4]).abs(), f[5]);
        // every float field carries 17 significant digits
        for x in line.split(',').skip(3) {
            let mantissa = x.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17, "{x}");
        }
        rows += 1;
    }
    assert_eq!(rows, 20);
}

#[test]
fn trivial_factor_rows_are_exact() {
    let v = json(&["converge", "--q-list", "3,7", "--j1", "0", "--format", "json"]);
    for r in v["rows"].as_array().unwrap() {
        assert!(r["delta"].as_f64().unwrap() < 1e-14, "{r}");
    }
}

#[test]
fn half_half_difference_decreases() {
    let levels: Vec<String> = (2..=40).map(|q| q.to_string()).collect();
    let v = json(&["converge", "--j1", "1/2", "--j2", "1/2", "--q-list", &levels.join(","), "--format", "json"]);
    let deltas: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["delta"].as_f64().unwrap()).collect();
    assert_eq!(deltas.len(), 39);
    assert!(deltas.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn infeasible_rows_are_skipped_with_a_note() {
    let o = run(&["converge", "--q", "1", "--j1", "1", "--j2", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().is_empty());
    assert_eq!(v["skipped"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
}

#[test]
fn cohomology_at_level_one() {
    let v = json(&["cohomology", "--q", "1", "--format", "json"]);
    let r = &v["results"][0];
    assert_eq!(r["supersphere"]["betti"], serde_json::json!([1, 0, 0, 1, 0, 0]));
    assert_eq!(r["sphere"]["betti"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(r["conclusive"], true);
    let b = &r["body_map_check"];
    assert!(b["body_closed_residual"].as_f64().unwrap() < 1e-10);
    assert!(b["body_exact_distance"].as_f64().unwrap() > 1e-3);
}

#[test]
fn cohomology_of_constants_only() {
    let v = json(&["cohomology", "--q", "1", "--pmax", "0", "--format", "json"]);
    assert_eq!(v["results"][0]["supersphere"]["betti"], serde_json::json!([1]));
    assert!(v["results"][0]["body_map_check"].is_null());
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("fuzzsuper-oracle-{}.json", std::process::id()));
    let o = run(&["oracle", "--j1", "1", "--j2", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    let c = v["structure_constants"][0]["c_classical"].as_f64().unwrap();
    assert!((c - 2.0 / 6f64.sqrt()).abs() < 1e-15);
}

#[test]
fn oracle_polynomials_round_trip() {
    let v = json(&["oracle", "--j1", "1", "--j2", "1/2", "--format", "json"]);
    for h in v["highest_weight"].as_array().unwrap() {
        let text = h["polynomial"].as_str().unwrap();
        let p: SuperPoly = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        let again = json(&["oracle", "--poly", text, "--format", "json"]);
        assert_eq!(again["polynomial"]["normal_form"].as_str().unwrap().parse::<SuperPoly>().unwrap(), p);
    }
}

#[test]
fn oracle_expands_a_coordinate() {
    let v = json(&["oracle", "--poly", "1 * x3", "--rho", "2", "--format", "json"]);
    let p = &v["polynomial"];
    assert_eq!(p["body"], "1 * x3");
    let coeffs = p["harmonic_coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 1);
    assert_eq!(coeffs[0]["label"], "(1,1,0,0)");
    let c = coeffs[0]["re"].as_f64().unwrap();
    let norm: f64 = p["norm"].as_str().unwrap().parse().unwrap();
    assert!((c * c - norm).abs() < 1e-12);
    assert_eq!(norm, 4.0);
    assert!(run(&["oracle", "--poly", "2 * x7"]).status.code() == Some(1));
}
