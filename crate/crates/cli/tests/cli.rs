//! End-to-end runs of the `amalgam` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use amalgam::classify::example_group;
use amalgam::nielsen::replay;
use amalgam::selftest::SelftestReport;
use amalgam::{GeneratingTuple, ReductionOutcome};
use serde_json::Value;

fn amalgam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_example_prints_six_passes() {
    for cmd in ["verify-example", "verify-paper-example"] {
        let o = amalgam(&[cmd]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 6);
        assert_eq!(out.lines().last(), Some("H = G"));
    }
}

#[test]
fn u_equals_v() {
    let o = amalgam(&["equal", "a1 a2 a3", "a6^2 a5 a4"]);
    assert_eq!(stdout(&o), "equal: true\n");
    let o = amalgam(&["equal", "a1 a2 a3", "a4 a5 a6"]);
    assert_eq!(stdout(&o), "equal: false\n");
    assert_eq!(amalgam(&["equal", "a1"]).status.code(), Some(1));
}

#[test]
fn selftest_is_byte_identical() {
    for extra in [&[][..], &["--json"][..]] {
        let args: Vec<&str> = ["selftest", "--seed", "42"].iter().chain(extra).copied().collect();
        let (a, b) = (amalgam(&args), amalgam(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let doc: Value = serde_json::from_slice(&amalgam(&["selftest", "--seed", "42", "--json"]).stdout).unwrap();
    assert_eq!(doc["schema"], "amalgam-cli/1");
    assert_eq!(doc["seed"], 42);
    let report: SelftestReport = serde_json::from_value(doc["result"].clone()).unwrap();
    assert!(report.passed());
    assert!(stdout(&amalgam(&["selftest", "--seed", "7"])).starts_with("selftest seed 7\n"));
}

#[test]
fn nielsen_record_replays() {
    let gens = ["a1 a2", "a1 a3", "a1 a4", "a1 a5"];
    let args: Vec<&str> = ["nielsen-reduce", "--json", "--trace"]
        .iter()
        .chain(&gens)
        .copied()
        .collect();
    let o = amalgam(&args);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &doc["result"][0];
    let out: ReductionOutcome = serde_json::from_value(row["certificate"].clone()).unwrap();
    let g = example_group();
    let input = GeneratingTuple::new(gens.iter().map(|s| g.word_from_raw(&parse(s)).unwrap()).collect());
    assert_eq!(replay(&g, &input, &out.moves).unwrap(), out.final_tuple);
    assert_eq!(row["trace"].as_array().unwrap().len(), out.moves.len());
    // The text log has one line per move in the `mulR i j e` form.
    let text = stdout(&amalgam(&[&["nielsen-reduce"][..], &gens].concat()));
    let logged: Vec<&str> = text
        .lines()
        .take_while(|l| l.starts_with("mul") || l.starts_with("invert"))
        .collect();
    assert_eq!(logged, out.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>());
}

fn parse(s: &str) -> Vec<(usize, i64)> {
    amalgam::text::parse_word(s).unwrap()
}

#[test]
fn step_budget_exhaustion_exits_2() {
    let o = amalgam(&[
        "nielsen-reduce",
        "--step-budget",
        "1",
        "a1 a2",
        "a1 a3",
        "a1 a4",
        "a1 a5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn parse_errors_exit_1_with_position() {
    let o = amalgam(&["lambda", "a1", "a2 x3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 4"));
    let bad = scratch("bad.txt", "factor H1: orders = 2 2\nfactor H2: orders = 2 oops\n");
    let o = amalgam(&["--presentation", bad.to_str().unwrap(), "lambda", "a1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(amalgam(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn files_and_jobs() {
    let pres = scratch(
        "g.txt",
        "ftype: orders = 2 2 2 2 2 3 ; p = 3 ; U = a1 a2 a3 ; V = a4 a5 a6\n",
    );
    let words = scratch("words.txt", "a1 a2 a3\n# comment\na6^2 a5 a4\n");
    let o = amalgam(&[
        "--presentation",
        pres.to_str().unwrap(),
        "equal",
        "--input",
        words.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o), "equal: true\n");
    let tuples = scratch(
        "tuples.txt",
        "gen: a1 a2\ngen: a1 a3\n\ngen: a1 a4\ngen: a1 a5\n\ngen: a1 a2 a3\n",
    );
    let run = |jobs: &str| amalgam(&["classify", "--jobs", jobs, "--input", tuples.to_str().unwrap()]).stdout;
    let one = run("1");
    assert_eq!(one, run("3"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("seed 0\n"));
    assert_eq!(text.matches("free product").count(), 3);
}

#[test]
fn word_commands() {
    let out = stdout(&amalgam(&["reduce", "a1 a2 a3 a1 a2 a3"]));
    assert!(out.contains("reduced: u^2"));
    let out = stdout(&amalgam(&["lambda", "a1 a4 a2"]));
    assert!(out.contains("lambda: 3"));
    let out = stdout(&amalgam(&["compare", "a4 a1 a4", "a4 a2 a4"]));
    assert!(out.contains("x <= y: true") && out.contains("y <= x: true"));
    let doc: Value = serde_json::from_slice(&amalgam(&["snf", "--json", "a1 a4"]).stdout).unwrap();
    assert_eq!(doc["result"][0]["snf"]["lambda"], 2);
    assert_eq!(amalgam(&["check-assumptions"]).status.code(), Some(0));
}
