use std::path::PathBuf;
use std::process::{Command, Output};

use origin_cli::VerdictDoc;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn origin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origin")).args(args).env_remove("ORIGIN_STATE_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn verdict(o: &Output) -> VerdictDoc {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn identical_files_are_contained() {
    let c = fixture("copier.json");
    let o = origin(&["check-containment", &c, &c]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"verdict\":\"contained\"}\n");
}

#[test]
fn shifted_copier_is_not_contained() {
    let o = origin(&["check-containment", &fixture("copier.json"), &fixture("shifted-copier.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v = verdict(&o);
    assert_eq!(v.verdict, "not-contained");
    assert_eq!(v.confirmed, Some(true));
    let cex = v.counterexample.unwrap();
    // the counterexample replays through enumerate
    let e = origin(&["enumerate", &fixture("copier.json"), "--input", &cex.input]);
    let pairs: Vec<origin_cli::PairDoc> = serde_json::from_str(&stdout(&e)).unwrap();
    assert!(pairs.iter().any(|p| Some(&p.output) == cex.output.as_ref()));
    let e = origin(&["enumerate", &fixture("shifted-copier.json"), "--input", &cex.input]);
    let pairs: Vec<origin_cli::PairDoc> = serde_json::from_str(&stdout(&e)).unwrap();
    assert!(!pairs.iter().any(|p| Some(&p.output) == cex.output.as_ref()));
}

#[test]
fn equivalence_reports_direction() {
    let o = origin(&["check-equivalence", &fixture("copier.json"), &fixture("shifted-copier.json")]);
    assert_eq!(o.status.code(), Some(1));
    let v = verdict(&o);
    assert_eq!(v.verdict, "not-equivalent");
    assert!(v.direction.is_some());
    let c = fixture("copy-then-reverse.json");
    assert_eq!(origin(&["check-equivalence", &c, &c]).status.code(), Some(0));
}

#[test]
fn malformed_input_is_an_error() {
    let dir = std::env::temp_dir().join(format!("origin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = origin(&["check-containment", bad.to_str().unwrap(), &fixture("copier.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = origin(&["check-containment", "/nonexistent.json", &fixture("copier.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unbounded_resynchronizer_is_refused() {
    let c = fixture("copier.json");
    let o = origin(&["check-containment-modulo", &c, &c, "--resync", &fixture("resync-universal.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resynchronizer not bounded"));
}

#[test]
fn modulo_identity_and_first_to_last() {
    let c = fixture("copier.json");
    let o = origin(&["check-containment-modulo", &c, &c, "--resync", &fixture("resync-identity.json")]);
    assert_eq!(o.status.code(), Some(0));
    let (first, last, r) = (fixture("first-emitter.json"), fixture("last-emitter.json"), fixture("resync-first-to-last.json"));
    assert_eq!(origin(&["check-containment-modulo", &last, &first, "--resync", &r]).status.code(), Some(0));
    let o = origin(&["check-containment-modulo", &first, &last, "--resync", &r]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(verdict(&o).confirmed, Some(true));
}

#[test]
fn resync_bounded_reports_the_bound() {
    let o = origin(&["resync-bounded", &fixture("resync-plus-minus-one.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"bound\":2,\"bounded\":true}\n");
    let o = origin(&["resync-bounded", &fixture("resync-universal.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_figure_and_dot() {
    let dir = std::env::temp_dir().join(format!("origin-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("figure.dot");
    let o = origin(&["enumerate", &fixture("figure.json"), "--input", "a1a2a3", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let pairs: Vec<origin_cli::PairDoc> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(pairs.len(), 1);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("->").count(), pairs[0].output.len());
    assert_eq!(text.matches('{').count(), text.matches('}').count());
}

#[test]
fn enumerate_empty_language() {
    let o = origin(&["enumerate", &fixture("empty.json"), "--input", "aa"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[]\n");
    let o = origin(&["enumerate", &fixture("empty.json"), "--input", "xyz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalize_busy_is_sound_on_a_fixture() {
    let o = origin(&["normalize", "--busy", &fixture("copy-then-reverse.json"), "--max-input", "3", "--max-out", "4", "--input", "ab"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert_eq!(v["inputs_checked"], 15);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
}

#[test]
fn random_suite_is_deterministic_and_agrees() {
    let args = ["random-suite", "--seed", "1", "--count", "10", "--max-input", "3", "--max-out", "4"];
    let a = origin(&args);
    let b = origin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["cases"].as_array().unwrap().len(), 10);
    assert_eq!(v["disagreements"], 0);
}

#[test]
fn random_suite_empty_and_corrupted() {
    let o = origin(&["random-suite", "--seed", "1", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = origin(&["random-suite", "--seed", "1", "--count", "10", "--max-input", "3", "--max-out", "4", "--corrupt"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn state_budget_from_environment() {
    let c = fixture("copy-then-reverse.json");
    let o = Command::new(env!("CARGO_BIN_EXE_origin"))
        .args(["check-containment", &c, &c])
        .env("ORIGIN_STATE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stdout));
    let o = Command::new(env!("CARGO_BIN_EXE_origin"))
        .args(["check-containment", &c, &c, "--state-budget", "1000000"])
        .env("ORIGIN_STATE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
