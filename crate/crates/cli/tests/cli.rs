use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proxcheck")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let report = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    (out.status.code().expect("exit code"), report)
}

#[test]
fn covering_example_yields_the_expected_certificate() {
    let (code, report) = run_json(&["check-covering", &fixture("figure2.json"), &fixture("p.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["holds"], true);
    let d1 = &report["result"]["certificate"][0];
    assert_eq!(d1["base_point"], "d1");
    assert_eq!(d1["neighborhood"], serde_json::json!(["d1", "d2", "d4"]));
    let sheets: Vec<&Value> = d1["sheets"].as_array().unwrap().iter().map(|s| &s["points"]).collect();
    assert_eq!(
        sheets,
        [&serde_json::json!(["a1", "a2", "a4"]), &serde_json::json!(["b1", "b2", "b4"]), &serde_json::json!(["c1", "c2", "c4"])]
    );
}

#[test]
fn constants_on_the_cycle_are_homotopic() {
    let (code, report) = run_json(&["check-homotopy", &fixture("const_a.json"), &fixture("const_e.json")]);
    assert_eq!(code, 0);
    let w = &report["result"]["witness"];
    assert_eq!(w["steps"], 4);
    assert_eq!(w["slices"][0]["0"], "a");
    assert_eq!(w["slices"][4]["0"], "e");
}

#[test]
fn interval_bound_below_the_shortest_homotopy_fails() {
    let (code, report) =
        run_json(&["check-homotopy", &fixture("const_a.json"), &fixture("const_e.json"), "--interval-n", "3"]);
    assert_eq!(code, 1);
    assert!(report["result"]["witness"].is_null());
    let (code, report) =
        run_json(&["check-homotopy", &fixture("const_a.json"), &fixture("const_e.json"), "--interval-n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["witness"]["steps"], 7);
}

#[test]
fn suite_passes() {
    let out = run(&["run-paper-suite"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL "));
    assert!(text.trim_end().ends_with("HOLDS"));
}

#[test]
fn schema_and_usage_errors_exit_2() {
    assert_eq!(run(&["check-axioms", &fixture("bad_schema.json")]).status.code(), Some(2));
    assert_eq!(run(&["check-axioms", &fixture("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["check-fibration", &fixture("projection.json"), "--catalog", "torus"]).status.code(), Some(2));
    // a space that matches neither end of the map
    let out = run(&["check-covering", &fixture("figure1.json"), &fixture("p.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn axiom_classification_and_symmetrization_warning() {
    let (code, report) = run_json(&["check-axioms", &fixture("figure1.json")]);
    assert_eq!(code, 1);
    assert_eq!(report["result"]["spatial"]["classification"], "Čech-proximity");
    let (code, report) = run_json(&["check-axioms", &fixture("not_proximity.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);
    let (_, report) = run_json(&["check-axioms", &fixture("tiny.grid")]);
    assert_eq!(report["result"]["points"], 6);
    assert!(report["result"]["descriptive"].is_object());
}

#[test]
fn map_checks() {
    assert_eq!(run(&["check-map", &fixture("p.json")]).status.code(), Some(0));
    let (code, report) = run_json(&["check-map", &fixture("not_pc.json")]);
    assert_eq!(code, 1);
    assert!(report["result"]["pc_counterexample"].is_string());
}

#[test]
fn fibration_and_cofibration_verdicts() {
    let (code, report) = run_json(&["check-fibration", &fixture("projection.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["label"], "relative to catalog {point, discrete2, I1, I2, cycle3}");
    let (code, report) = run_json(&["check-fibration", &fixture("fold.json"), "--catalog", "point,I2"]);
    assert_eq!(code, 1);
    assert!(report["result"]["per_space"]["I2"]["counterexample"].is_object());
    assert_eq!(run(&["check-cofibration", &fixture("summand.json")]).status.code(), Some(0));
    let (code, report) = run_json(&["check-cofibration", &fixture("endpoint.json")]);
    assert_eq!(code, 1);
    assert_eq!(report["result"]["retraction"]["exists"], true);
}

#[test]
fn reports_are_deterministic_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("proxcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for path in [&a, &b] {
        let out = run(&["--report", path.to_str().unwrap(), "check-covering", &fixture("p.json")]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).ok();
    let (ja, jb): (Value, Value) = (serde_json::from_slice(&ra).unwrap(), serde_json::from_slice(&rb).unwrap());
    assert_eq!(ja["result"], jb["result"]);
    assert_eq!(ja["inputs"], jb["inputs"]);
    let digest = ja["inputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
}
