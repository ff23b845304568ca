//! End-to-end runs of the `zslab` binary: golden JSON reports, schema
//! validation, exit codes and checkpoint round trips.
//!
//! Regenerate the golden files with `UPDATE_GOLDEN=1 cargo test -p zslab-cli`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest_dir().join("tests/fixtures").join(name).display().to_string()
}

fn zslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zslab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_run(args: &[&str]) -> (Value, Output) {
    let mut full = vec!["--json", "--no-timing"];
    full.extend_from_slice(args);
    let out = zslab(&full);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", stdout(&out), stderr(&out)));
    (v, out)
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(manifest_dir().join("schema/report-v1.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let schema = validator();
    let errors: Vec<String> = schema.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

fn check_golden(name: &str, args: &[&str]) {
    let (v, out) = json_run(args);
    assert_valid(&v);
    let path = manifest_dir().join("tests/golden").join(format!("{name}.json"));
    // paths differ between checkouts
    let text = stdout(&out).replace(&fixture(""), "<fixtures>/");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, expected, "golden mismatch for {name}");
}

#[test]
fn golden_reports() {
    let cases: &[(&str, Vec<String>)] = &[
        ("sumset_pair", vec!["sumset".into(), fixture("pair_f5.txt")]),
        ("sumset_pair_exact2", vec!["sumset".into(), fixture("pair_f5.txt"), "--exact-m".into(), "2".into()]),
        ("sumset_line_coords", vec!["sumset".into(), fixture("line_f5x2.txt"), "--out".into(), "coords".into()]),
        ("check_with_zero", vec!["check".into(), fixture("with_zero_f5x2.txt")]),
        ("check_line_m3", vec!["check".into(), fixture("line_f5x2.txt"), "--m".into(), "3".into()]),
        ("decompose_runs", vec!["decompose".into(), fixture("runs_f31x2.txt")]),
        (
            "decompose_parallel",
            vec!["decompose".into(), fixture("parallel_f5x2.txt"), "--alpha".into(), "1".into(), "--epsilon".into(), "1".into()],
        ),
        ("decompose_complete", vec!["decompose".into(), fixture("plane_f3x2.txt")]),
        ("olson_7_1", vec!["olson".into(), "--p".into(), "7".into(), "--d".into(), "1".into()]),
        ("davenport_3_2", vec!["davenport".into(), "--p".into(), "3".into(), "--d".into(), "2".into()]),
        ("construct_13_1", vec!["extremal".into(), "construct".into(), "--p".into(), "13".into(), "--variant".into(), "1".into()]),
        ("classify_5", vec!["extremal".into(), "classify".into(), "--p".into(), "5".into()]),
        ("olson3_3", vec!["extremal".into(), "olson3".into(), "--p".into(), "3".into()]),
    ];
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        check_golden(name, &args);
    }
}

#[test]
fn sumset_values() {
    let (v, _) = json_run(&["sumset", &fixture("pair_f5.txt")]);
    assert_eq!(v["result"]["elements"], serde_json::json!([1, 2, 3]));
    let (v, _) = json_run(&["sumset", &fixture("pair_f5.txt"), "--exact-m", "2"]);
    assert_eq!(v["result"]["elements"], serde_json::json!([3]));
}

#[test]
fn check_predicates() {
    let (v, _) = json_run(&["check", &fixture("with_zero_f5x2.txt")]);
    assert_eq!(v["result"]["zero_sum_free"], false);
    let (v, _) = json_run(&["check", &fixture("line_f5x2.txt"), "--m", "3"]);
    assert_eq!(v["result"]["m_incomplete"], true);
}

#[test]
fn decompose_outcomes() {
    let (v, _) = json_run(&["decompose", &fixture("runs_f31x2.txt")]);
    assert_eq!(v["result"]["outcome"], "decomposition");
    assert_eq!(v["result"]["h"]["dim"], 0);
    let (v, _) = json_run(&["decompose", &fixture("parallel_f5x2.txt"), "--alpha", "1", "--epsilon", "1"]);
    assert_eq!(v["result"]["h"]["basis"], serde_json::json!([[1, 0]]));
    assert!(v["result"]["verification"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let (v, _) = json_run(&["decompose", &fixture("plane_f3x2.txt")]);
    assert_eq!(v["result"]["outcome"], "complete");
}

#[test]
fn constants_and_extremal_values() {
    let (v, _) = json_run(&["olson", "--p", "7", "--d", "1"]);
    assert_eq!(v["claims"][0]["value"], 4);
    let (v, _) = json_run(&["davenport", "--p", "3", "--d", "2"]);
    assert_eq!(v["claims"][0]["value"], 5);
    let (v, _) = json_run(&["extremal", "construct", "--p", "13", "--variant", "1"]);
    let (ol13, _) = json_run(&["olson", "--p", "13", "--d", "1"]);
    let ol13 = ol13["claims"][0]["value"].as_u64().unwrap();
    assert_eq!(v["result"]["size"].as_u64().unwrap(), 13 + ol13 - 2);
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn exit_codes() {
    let out = zslab(&["sumset", &fixture("empty.txt")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty sequence"));

    let out = zslab(&["check", &fixture("bad_row.txt")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let out = zslab(&["check", "/nonexistent/zslab/input.txt"]);
    assert_eq!(out.status.code(), Some(2));

    let out = zslab(&["extremal", "classify", "--p", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("out of theorem scope"));

    let out = zslab(&["olson", "--p", "5", "--d", "2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("[bound]"));

    let out = zslab(&["olson", "--p", "6", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

fn resume_until_done(dir: &Path, p: &str, d: &str, budget: &str) -> (Value, usize) {
    let ck = dir.join("search.ckpt").display().to_string();
    let (mut v, out) = json_run(&["olson", "--p", p, "--d", d, "--budget", budget, "--checkpoint", &ck]);
    let mut runs = 1;
    let mut code = out.status.code();
    while code == Some(4) {
        assert!(v["claims"][0]["status"] == "bound");
        let (next, out) = json_run(&["olson", "--p", p, "--d", d, "--budget", budget, "--checkpoint", &ck, "--resume", &ck]);
        v = next;
        code = out.status.code();
        runs += 1;
    }
    assert_eq!(code, Some(0));
    (v, runs)
}

#[test]
fn checkpoint_resume_matches_an_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let (whole, _) = json_run(&["olson", "--p", "5", "--d", "2"]);
    let (resumed, runs) = resume_until_done(dir.path(), "5", "2", "2000");
    assert!(runs > 2);
    assert_eq!(resumed["result"], whole["result"]);
    assert_eq!(resumed["nodes_explored"], whole["nodes_explored"]);
}

#[test]
fn resume_rejects_another_group() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("c.ckpt").display().to_string();
    let out = zslab(&["olson", "--p", "5", "--d", "2", "--budget", "50", "--checkpoint", &ck]);
    assert_eq!(out.status.code(), Some(4));
    let out = zslab(&["olson", "--p", "7", "--d", "2", "--resume", &ck]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("checkpoint"));
    let out = zslab(&["davenport", "--p", "5", "--d", "2", "--resume", &ck]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn threads_do_not_change_the_answer() {
    let (one, _) = json_run(&["olson", "--p", "5", "--d", "2"]);
    let (four, _) = json_run(&["--threads", "4", "olson", "--p", "5", "--d", "2"]);
    assert_eq!(one["result"]["lower"], four["result"]["lower"]);
    assert_eq!(one["result"]["witness"], four["result"]["witness"]);
    let out = zslab(&["--threads", "2", "olson", "--p", "5", "--d", "2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn text_output_lists_claims() {
    let out = zslab(&["--no-timing", "sumset", &fixture("pair_f5.txt")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "sumset over F_5^1\n  |S_A|: 3 [exact]\n  S_A = {1, 2, 3}\n");
}
