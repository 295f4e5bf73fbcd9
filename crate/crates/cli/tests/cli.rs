//! End-to-end tests of the binary: flags, output formats and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quartic-recip"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn law_eq1_json_line_and_exit_zero() {
    let out = run(&["law", "--id", "eq1", "--m", "13", "--p", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["law"], "EQ1");
    assert_eq!(v["holds"], true);
    assert_eq!(v["lhs"], 1);
    assert_eq!(v["rhs"], 1);
    assert_eq!(v["params"]["C"], 3);
}

#[test]
fn law_json_matches_campaign_jsonl_schema() {
    // the single-case line must be byte-identical to the campaign stream line
    let single = run(&["law", "--id", "eq3", "--p", "7", "--format", "json"]);
    let sweep = run(&["campaign", "--name", "m2", "--p-max", "7", "--format", "json"]);
    assert_eq!(stdout(&single), stdout(&sweep));
}

#[test]
fn law_precondition_failure_exits_two() {
    let out = run(&["law", "--id", "eq1", "--m", "13", "--p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn quartic_prints_bare_symbol() {
    let out = run(&["quartic", "--p", "5", "--m", "29"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1");
}

#[test]
fn symbol_ambiguous_exits_three() {
    let out = run(&["symbol", "--x", "7", "--y", "4", "--m", "5", "--p", "11"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn triple_conventions() {
    let out = run(&["triple", "--m", "13"]);
    assert_eq!(stdout(&out).trim(), "m=13 A=-13 B=2 C=3 convention=EQ1");
    let out = run(&["triple", "--m", "13", "--convention", "eq4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["A"], 13);
    assert_eq!(v["B"], 3);
    assert_eq!(v["C"], 2);
    assert_eq!(v["convention"], "EQ4");
    let out = run(&["triple", "--m", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn split_prints_data_and_verdict() {
    let out = run(&["split", "--m", "13", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("f=3 g=4"));
    assert!(text.contains("lhs=+1 rhs=+1"));
}

#[test]
fn campaign_text_always_shows_both_sides_of_single_law() {
    let out = run(&["law", "--id", "eq7", "--p", "13", "--q", "17"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lhs=-1") && text.contains("rhs=-1"));
}

#[test]
fn campaign_m2_jsonl_and_exit_zero() {
    let out = run(&["campaign", "--name", "m2", "--p-max", "100", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["law"], "EQ3");
        assert_eq!(v["holds"], true);
    }
}

#[test]
fn campaign_jobs_are_byte_identical() {
    fn args(jobs: &str) -> [&str; 11] {
        [
            "campaign", "--name", "whf", "--m-max", "100", "--p-max", "200",
            "--format", "json", "--jobs", jobs,
        ]
    }
    let a = run(&args("1"));
    let b = run(&args("8"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn campaign_identities_deterministic_by_seed() {
    let args = ["campaign", "--name", "identities", "--samples", "2", "--seed", "9", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let out = run(&[
        "campaign", "--name", "m2", "--p-max", "31",
        "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 4);
    std::fs::remove_dir_all(Path::new(&dir)).unwrap();
}

#[test]
fn invalid_arguments_exit_two() {
    assert_eq!(run(&["law", "--id", "eq1", "--m", "13"]).status.code(), Some(2)); // missing --p
    assert_eq!(run(&["law", "--id", "nope", "--m", "13", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["campaign", "--name", "whf"]).status.code(), Some(2)); // missing bounds
    assert_eq!(run(&["campaign", "--name", "m2", "--p-max", "100", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["quartic", "--p", "5", "--m", "4294967296"]).status.code(), Some(2)); // above 2^31
    assert_eq!(run(&["symbol", "--x", "1", "--y", "1", "--m", "2", "--p", "25"]).status.code(), Some(2)); // composite p
    assert_eq!(run(&["campaign", "--name", "m2", "--p-max", "100", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["campaign", "--help"]).status.code(), Some(0));
}
