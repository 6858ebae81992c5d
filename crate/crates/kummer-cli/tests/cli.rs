//! End-to-end tests of the `kummer` binary: report shape, exit codes,
//! determinism, and the documented example invocations.

use std::process::{Command, Output};

use serde_json::Value;

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .env_remove("KUMMER_SEED")
        .output()
        .expect("spawn kummer")
}

fn report(args: &[&str]) -> Value {
    let out = kummer(args);
    let text = String::from_utf8(out.stdout).expect("utf8 stdout");
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"))
}

fn status(rep: &Value) -> &str {
    rep["status"].as_str().expect("status string")
}

fn result_entry<'a>(rep: &'a Value, name: &str) -> &'a Value {
    rep["results"]
        .as_array()
        .expect("results array")
        .iter()
        .find(|e| e["name"] == name)
        .unwrap_or_else(|| panic!("no result named {name}"))
}

#[test]
fn theta_eval_reports_the_reference_value() {
    let rep = report(&[
        "theta-eval",
        "--omega",
        "1.1i,0.2i,0.9i",
        "--char",
        "00,00",
        "--z",
        "0,0",
    ]);
    assert_eq!(status(&rep), "pass");
    assert_eq!(result_entry(&rep, "label")["value"], "A1");
    let abs = result_entry(&rep, "abs")["value"].as_f64().unwrap();
    assert!(abs > 1.0 && abs < 1.5, "theta constant near 1.2, got {abs}");
}

#[test]
fn theta_eval_accepts_labels_and_reports_gradients() {
    let rep = report(&[
        "theta-eval",
        "--omega",
        "1.1i,0.2i,0.9i",
        "--char",
        "X3",
        "--z",
        "0.3+0.1i,0.2-0.4i",
        "--grad",
    ]);
    assert_eq!(status(&rep), "pass");
    let grad = result_entry(&rep, "grad")["value"].as_array().unwrap();
    assert_eq!(grad.len(), 2);
}

#[test]
fn identities_pass_at_the_documented_tolerance() {
    let out = kummer(&[
        "identities", "--suite", "all", "--trials", "20", "--tol", "1e-7", "--quiet",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "pass");
}

#[test]
fn identity_reports_are_deterministic_and_seedable() {
    let args = ["identities", "--suite", "riemann", "--trials", "3"];
    let a = kummer(&args);
    let b = kummer(&args);
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    let c = kummer(&[
        "identities", "--suite", "riemann", "--trials", "3", "--seed", "7",
    ]);
    assert_ne!(a.stdout, c.stdout, "seed must enter the sampling");
    let d = Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(args)
        .env("KUMMER_SEED", "7")
        .output()
        .unwrap();
    // The --seed flag and the environment variable name the same stream,
    // but the echoed inputs record only the resolved seed.
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn ff_example_replays_the_frozen_instance() {
    let rep = report(&["ff-example", "--p", "19"]);
    assert_eq!(status(&rep), "pass");
    assert_eq!(
        result_entry(&rep, "squared-constants")["value"],
        serde_json::json!([9, 11, 11, 11, 5, 5, 5, 7, 7, 7])
    );
    assert_eq!(
        result_entry(&rep, "roots")["value"],
        serde_json::json!([2, 8, 8, 8, 6, 6, 6, 1, 1, 1])
    );
    assert_eq!(
        result_entry(&rep, "quintic-roots")["value"],
        serde_json::json!([0, 1, 4, 9, 11])
    );
    assert_eq!(result_entry(&rep, "e11-discrepancy-resolved")["pass"], true);
    assert_eq!(
        result_entry(&rep, "cross-incidence-six-per-line")["pass"],
        true
    );
}

#[test]
fn ff_search_counts_liftable_points() {
    let rep = report(&["ff-search", "--primes", "3,5,19"]);
    let counts = result_entry(&rep, "counts")["value"].as_array().unwrap();
    assert_eq!(counts.len(), 3);
    assert_eq!(counts[0]["liftable"], 0);
    assert_eq!(counts[1]["liftable"], 0);
    assert_eq!(counts[2]["liftable"], 2);
    assert_eq!(counts[2]["first-liftable"], serde_json::json!([1, 3, 3, 3]));
}

#[test]
fn build_surface_over_f19_is_exact() {
    let rep = report(&["build-surface", "--base", "1:3:3:3", "--p", "19"]);
    assert_eq!(status(&rep), "pass");
    let eqs = result_entry(&rep, "equations")["value"].as_array().unwrap();
    assert_eq!(eqs.len(), 15);
    assert_eq!(result_entry(&rep, "ranks-all-four")["pass"], true);
    assert_eq!(
        result_entry(&rep, "rosenhain-invariants")["value"],
        serde_json::json!([9, 11, 4])
    );
}

#[test]
fn build_surface_from_a_period_matrix_checks_the_map() {
    let rep = report(&[
        "build-surface",
        "--omega",
        "1.1i,0.2i,0.9i",
        "--z",
        "0.3+0.1i,0.2-0.4i",
    ]);
    assert_eq!(status(&rep), "pass");
    let r = result_entry(&rep, "equations-at-point")["residual"]
        .as_f64()
        .unwrap();
    assert!(r < 1e-7, "map lands on the surface, residual {r}");
}

#[test]
fn classify_fiber_names_the_strata() {
    let rep = report(&["classify-fiber", "--base", "1:3:3:3", "--p", "19"]);
    assert_eq!(result_entry(&rep, "stratum")["value"], "smooth-jacobian");
    let rep = report(&["classify-fiber", "--base", "0:0:0:1"]);
    assert_eq!(result_entry(&rep, "stratum")["value"], "eight-planes");
    let rep = report(&["classify-fiber", "--base", "5:4:3:0", "--p", "19"]);
    assert_eq!(result_entry(&rep, "stratum")["value"], "product-abelian");
    assert_eq!(result_entry(&rep, "vanishing-count")["value"], 1);
}

#[test]
fn product_fiber_over_f19_passes_when_roots_exist() {
    let rep = report(&[
        "fiber", "--stratum", "product", "--s", "1:2", "--t", "1:6", "--p", "19",
    ]);
    assert_eq!(status(&rep), "pass");
    assert_eq!(result_entry(&rep, "line-count")["value"], 16);
}

#[test]
fn product_fiber_reports_partial_when_a_root_is_missing() {
    let out = kummer(&[
        "fiber", "--stratum", "product", "--s", "1:2", "--t", "2:1", "--p", "19",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(status(&rep), "partial");
    assert!(rep["error"].as_str().unwrap().contains("square root"));
}

#[test]
fn cone_fiber_samples_a_point_when_asked() {
    let rep = report(&[
        "fiber", "--stratum", "cone", "--t", "2:1", "--x6", "3", "--p", "19",
    ]);
    assert_eq!(status(&rep), "pass");
    assert_eq!(
        result_entry(&rep, "sample-point")["value"],
        serde_json::json!([0, 0, 4, 2, 1, 3])
    );
}

#[test]
fn corner_fiber_reports_the_cube_combinatorics() {
    let rep = report(&["fiber", "--stratum", "corner"]);
    assert_eq!(status(&rep), "pass");
    assert_eq!(result_entry(&rep, "plane-count")["value"], 8);
    assert_eq!(result_entry(&rep, "edge-count")["value"], 12);
    assert_eq!(result_entry(&rep, "face-count")["value"], 6);
}

#[test]
fn minors_match_closed_forms_on_both_strata() {
    let rep = report(&[
        "minors", "--stratum", "cone", "--t", "2:1", "--x6", "3", "--p", "19",
    ]);
    assert_eq!(status(&rep), "pass");
    let rep = report(&["minors", "--stratum", "corner"]);
    assert_eq!(status(&rep), "pass");
    assert_eq!(result_entry(&rep, "point-on-corner-plane")["pass"], true);
}

#[test]
fn genus1_suite_passes() {
    let out = kummer(&["genus1", "--trials", "5", "--quiet"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "pass");
}

#[test]
fn rosenhain_checks_pass() {
    let out = kummer(&["rosenhain", "--check", "all", "--trials", "2", "--quiet"]);
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_with_code_two() {
    for args in [
        &["theta-eval", "--omega", "bogus"][..],
        &["theta-eval"][..],
        &["ff-example", "--p", "17"][..],
        &["fiber", "--stratum", "product"][..],
        &["minors", "--stratum", "product"][..],
        &["no-such-command"][..],
    ] {
        let out = kummer(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(["genus1", "--trials", "2"])
        .env("KUMMER_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quiet_mode_prints_only_the_status() {
    let out = kummer(&["ff-search", "--primes", "3", "--quiet"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "pass");
    assert!(out.status.success());
}
