use std::process::{Command, Output};

use serde_json::Value;

fn strichartz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strichartz")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn qtable_csv_has_every_entry_and_unit_row_sums() {
    let out = strichartz(&["qtable", "--max-s", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["s", "a", "c", "q_exact", "q_decimal", "exact", "row_sum"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let expected: usize = (0..=8).map(|s| (s + 1) * (s + 1)).sum();
    assert_eq!(rows.len(), expected);
    assert!(rows.iter().all(|r| &r[6] == "1" && &r[5] == "true"));
    // Q_1 is the constant 1/2 matrix
    assert!(rows.iter().filter(|r| &r[0] == "1").all(|r| &r[3] == "1/2"));
}

#[test]
fn words_check_matches_the_integral_everywhere() {
    let out = strichartz(&["words-check", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 495);
    assert!(checks.iter().all(|c| c["detail"]["matches_integral"] == Value::Bool(true)));
    assert!(checks.iter().all(|c| c["exact"] == Value::Bool(true)));
    // exact values are serialized as num/den strings
    let q1100 = checks.iter().find(|c| c["id"] == "words/1,1,0,0").unwrap();
    assert_eq!(q1100["expected"], "1/2");
}

#[test]
fn report_schema_and_summary() {
    let out = strichartz(&["funk-hecke"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for key in ["version", "config_echo", "checks", "summary"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let s = &r["summary"];
    assert_eq!(s["total"], s["passed"]);
    assert_eq!(s["failed"], 0);
    assert_eq!(r["tables"][0]["rows"].as_array().unwrap().len(), 33);
}

#[test]
fn reports_are_deterministic_without_timing() {
    let args = ["hermite-proj", "--max-s", "3", "--no-timing", "--jobs", "4"];
    let a = strichartz(&args);
    let b = strichartz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // the thread count changes only the echoed config
    let c = strichartz(&["hermite-proj", "--max-s", "3", "--no-timing", "--jobs", "1"]);
    assert_eq!(json(&a)["checks"], json(&c)["checks"]);
}

#[test]
fn config_file_flags_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("report.csv");
    std::fs::write(&cfg, r#"{"max_s": 2, "format": "json", "tol_norm": 1e-9}"#).unwrap();
    let o = strichartz(&["hermite-norm", "--config", cfg.to_str().unwrap(), "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(&rdr.headers().unwrap()[0], "id");
    // five frame cases, S = 0..=2
    assert_eq!(rdr.records().count(), 15);
}

#[test]
fn bad_configuration_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"max_s": 2, "unknown": true}"#).unwrap();
    assert_eq!(strichartz(&["qtable", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"tol_flow": 0}"#).unwrap();
    assert_eq!(strichartz(&["flow-check", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(strichartz(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn resource_caps_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("caps.json");
    std::fs::write(&cfg, r#"{"word_cap": 50}"#).unwrap();
    let o = strichartz(&["words-check", "--max-n", "6", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let r = json(&o);
    assert!(r["summary"]["cap_exceeded"].as_u64().unwrap() > 0);
    std::fs::write(&cfg, r#"{"qs_cap": 4}"#).unwrap();
    assert_eq!(strichartz(&["qtable", "--max-s", "6", "--config", cfg.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn failing_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.json");
    // demand more of the perturbation margin than it has
    std::fs::write(&cfg, r#"{"min_perturbation_margin": 0.5}"#).unwrap();
    let o = strichartz(&["strichartz", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["summary"]["failed"], 2);
}

#[test]
fn report_all_selects_suites_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sel.json");
    std::fs::write(&cfg, r#"{"suites": ["ks-check", "weighted"], "max_s": 3}"#).unwrap();
    let o = strichartz(&["report-all", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.iter().all(|id| id.starts_with("ks-check/") || id.starts_with("weighted/")));
    assert!(ids.iter().any(|id| id.starts_with("weighted/")));
    assert!(r.get("tables").is_none());
}
