use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contactloci"))
        .args(args)
        .env_remove("CONTACTLOCI_BUDGET")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    report["result"].clone()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn lattice_reports() {
    let r = run_ok(&["lattice", &path("triangle.json"), "--golden"]);
    assert_eq!(r["poset"]["elements"].as_array().unwrap().len(), 7);
    assert_eq!(r["char_poly"]["display"], "3 - 3q + q^2");
    let r = run_ok(&["lattice", &path("central_three_lines.json"), "--golden"]);
    assert_eq!(r["rank"], 2);
    assert_eq!(r["complement_betti"]["coeffs"], serde_json::json!(["1", "3", "2"]));
}

#[test]
fn emitted_json_reparses() {
    let r = run_ok(&["lattice", &path("triangle.json"), "--golden"]);
    let arr: contactloci::MultiArrangement = serde_json::from_value(r["arrangement"].clone()).unwrap();
    assert_eq!(arr, contactloci::fixtures::triangle());
    let poset: contactloci::IntersectionPoset = serde_json::from_value(r["poset"].clone()).unwrap();
    assert_eq!(poset.len(), 7);
    assert_eq!(serde_json::to_value(&poset).unwrap(), r["poset"]);
}

#[test]
fn contact_reports() {
    let r = run_ok(&["contact", &path("central_three_lines.json"), "--m", "3", "--golden"]);
    assert_eq!(r["num_components"], 4);
    assert_eq!(r["betti"]["coeffs"][0], "4");
    let r = run_ok(&["contact", &path("triangle.json"), "--m", "2", "--golden"]);
    assert_eq!(r["components"].as_array().unwrap().len(), 6);
    let r = run_ok(&["contact", &path("central_three_lines.json"), "--m", "1", "--restricted", "--golden"]);
    let first = &r["components"][0];
    assert!(first["fiber_equation"].as_str().unwrap().ends_with("= 1"));
    assert!(first.get("betti").is_none());
    assert!(r.get("betti").is_none());
}

#[test]
fn restricted_needs_positive_order() {
    let out = run(&["contact", &path("triangle.json"), "--m", "0", "--restricted"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn zeta_report() {
    let r = run_ok(&["zeta", &path("central_three_lines.json"), "--max-m", "1", "--golden"]);
    assert_eq!(r["max_order"], 1);
    assert_eq!(r["display"], serde_json::json!(["2 - 3q + q^2", "3q^-1 - 6 + 3q"]));
    let out = run(&["zeta", &path("triangle.json"), "--max-m", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generic_report() {
    let r = run_ok(&["generic", "--kind", "generic-central", "--n", "2", "--d", "3", "--m", "3", "--golden"]);
    assert_eq!(r["betti"]["coeffs"][0], "4");
    assert_eq!(r["restricted_betti"]["coeffs"][0], "4");
    let r = run_ok(&["generic", "--kind", "generic", "--n", "2", "--d", "3", "--m", "2", "--golden"]);
    assert_eq!(r["betti"]["coeffs"][0], "6");
    let out = run(&["generic", "--kind", "generic-central", "--n", "2", "--d", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_report() {
    let r = run_ok(&["count", &path("central_three_lines.json"), "--m", "1", "--p", "5", "--golden"]);
    assert_eq!(r["count"], "240");
    assert_eq!(r["predicted"], "240");
    assert_eq!(r["match"], true);
    let r = run_ok(&["count", &path("central_three_lines.json"), "--m", "1", "--p", "5", "--restricted", "--golden"]);
    assert_eq!(r["count"], "60");
    assert_eq!(r["match"], true);
}

#[test]
fn exit_codes() {
    let out = run(&["lattice", &path("duplicate.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate hyperplane"));

    let out = run(&["lattice", &path("bad_field.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hyperplanes[0].coeffs[1]"));

    let out = run(&["count", &path("collapsing.json"), "--m", "1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let out = Command::new(env!("CARGO_BIN_EXE_contactloci"))
        .args(["count", &path("triangle.json"), "--m", "2", "--p", "7"])
        .env("CONTACTLOCI_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["lattice", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn golden_output_is_reproducible() {
    let args = ["contact", &path("triangle.json"), "--m", "2", "--golden"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(report.get("timing_ms").is_none());
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
    let timed: Value = serde_json::from_slice(&run(&args[..4]).stdout).unwrap();
    assert!(timed["timing_ms"].is_u64());
}
