use std::path::PathBuf;
use std::process::{Command, Output};

use gauge_cli::commands;
use gauge_cli::scenario::EXAMPLE51;
use gauge_cli::{Scenario, Status};
use gauge_core::error::Error;
use num_rational::Rational64;

fn gauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauge")).args(args).output().expect("binary runs")
}

fn fixture() -> String {
    format!("{}/fixtures/example51.json", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gauge-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json_of(path: &PathBuf) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn record<'a>(report: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
    report["records"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap_or_else(|| panic!("no record {}", name))
}

/// The bundled scenario with the value of `j` raised to `(1/4, 1/2)`.
fn perturbed() -> String {
    let s = EXAMPLE51.replacen("[\"-1/4\", \"1/2\"]", "[\"1/4\", \"1/2\"]", 1);
    assert_ne!(s, EXAMPLE51, "fixture layout changed");
    s
}

#[test]
fn check_reports_omega_of_each_gauge() {
    let out = scratch("check.json", "");
    let o = gauge(&["check", &fixture(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = json_of(&out);
    for (name, omega) in [("alpha", 2), ("beta", 1), ("alpha_p", 2)] {
        let rec = record(&r, &format!("gauge {}", name));
        assert_eq!(rec["status"], "pass");
        assert_eq!(rec["details"]["omega"], omega, "{}", name);
    }
    assert_eq!(record(&r, "gauge alpha")["details"]["minimal"], true);
    assert_eq!(record(&r, "gauge alpha_p")["details"]["minimal"], false);
}

#[test]
fn empty_scenario_passes_with_no_checks() {
    let p = scratch("empty.json", "{}");
    let o = gauge(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("0 checks, 0 failed"));
}

#[test]
fn perturbed_scenario_fails_with_witness() {
    let s = Scenario::parse(&perturbed()).unwrap();
    let report = commands::check(&s);
    let alpha = report.records.iter().find(|r| r.name == "gauge alpha").unwrap();
    assert_eq!(alpha.status, Status::Fail);
    assert_eq!(alpha.details["witness"]["pair"], serde_json::json!([2, 2]));

    let p = scratch("perturbed.json", &perturbed());
    assert_eq!(gauge(&["check", p.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = Scenario::parse("{\n  \"variables\": [\"x\",\n}").err().expect("parse fails");
    match err {
        Error::Parse(msg) => assert!(msg.starts_with("line 3, column"), "{}", msg),
        other => panic!("expected a parse error, got {:?}", other),
    }
    let p = scratch("broken.json", "{ \"variables\": ");
    let o = gauge(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn unknown_fields_are_rejected() {
    assert!(matches!(Scenario::parse("{\"colour\": 1}"), Err(Error::Parse(_))));
}

#[test]
fn unresolved_reference_names_the_block() {
    let s = EXAMPLE51.replacen("\"of\": \"alpha\"", "\"of\": \"gamma\"", 1);
    assert_ne!(s, EXAMPLE51);
    let err = Scenario::parse(&s).err().expect("parse fails").to_string();
    assert!(err.contains("gamma"), "{}", err);
}

#[test]
fn constants_need_a_note() {
    let s = EXAMPLE51.replacen("\"note\":", "\"remark\":", 1);
    assert!(Scenario::parse(&s).is_err());
}

#[test]
fn example_values_and_cosets() {
    let out = scratch("example.json", "");
    let o = gauge(&["example51", "--gamma", "1/4", "--samples", "200", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = json_of(&out);
    let values = &record(&r, "values")["details"];
    assert_eq!(values["alpha(j)"], "(-1/4, 1/2)");
    assert_eq!(values["alpha(j-k)"], "(1/4, 1/2)");
    assert_eq!(values["beta(j)"], "(1/2)");
    let keys = &record(&r, "value cosets")["details"]["keys"];
    assert_eq!(keys, &serde_json::json!([["0", "0"], ["1/4", "1/2"], ["3/4", "1/2"]]));
}

#[test]
fn zero_samples_skips_sampling() {
    let r = commands::example51(Rational64::new(1, 4), 0, 1).unwrap();
    assert!(r.passed());
    assert!(r.records.iter().any(|x| x.status == Status::Unverified));
    assert!(!r.records.iter().any(|x| x.name == "gauge ring description"));
}

#[test]
fn gamma_outside_the_interval_is_a_usage_error() {
    assert_eq!(gauge(&["example51", "--gamma", "1/2", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(gauge(&["example51", "--gamma", "abc"]).status.code(), Some(2));
}

#[test]
fn same_seed_gives_identical_reports() {
    let (a, b) = (scratch("seed-a.json", ""), scratch("seed-b.json", ""));
    for p in [&a, &b] {
        let o = gauge(&["example51", "--samples", "100", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn ordered_property_suite() {
    let r = commands::props("ordered".parse().unwrap(), 3).unwrap();
    assert!(r.records.len() >= 5);
    assert!(r.passed());
    assert_eq!(gauge(&["props", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn extensions_of_the_fixture() {
    let s = Scenario::example51();
    let r = commands::extensions(&s);
    assert_eq!(r.records.len(), 1);
    assert_eq!(r.records[0].details["count"], 2);
    assert_eq!(r.records[0].details["kind"], "split");
}

#[test]
fn full_report_passes_on_the_fixture() {
    let r = commands::full_report(&Scenario::example51());
    let bad: Vec<_> = r.records.iter().filter(|x| !matches!(x.status, Status::Pass | Status::Unverified)).collect();
    assert!(bad.is_empty(), "{:?}", bad);
}
