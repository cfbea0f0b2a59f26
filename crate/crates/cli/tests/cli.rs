use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutrit-qec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v = serde_json::from_slice(&o.stdout).expect("valid json");
    (o.status.code().unwrap(), v)
}

#[test]
fn phase_table_has_eight_rows() {
    let o = run(&["tables", "--which", "phase"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(
        s.lines()
            .filter(|l| l.starts_with("| ") && !l.starts_with("| #"))
            .count(),
        8
    );
    assert!(s.contains("| 4 | Z1 | 1 | ω | q3 |"));
}

#[test]
fn bit_table_json_has_fourteen_rows() {
    let (code, v) = json(&["tables", "--which", "bit"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "tables");
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 14);
}

#[test]
fn g2_pair_exits_three() {
    for p in ["1,3", "5,1", "3,5"] {
        let o = run(&["stabgen", "--pair", p]);
        assert_eq!(o.status.code(), Some(3), "pair {p}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn bad_pair_is_usage_error() {
    assert_eq!(run(&["stabgen", "--pair", "2,2"]).status.code(), Some(2));
    assert_eq!(run(&["stabgen", "--pair", "0,7"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn worked_pair_reproduces_trace() {
    let (code, v) = json(&["stabgen", "--pair", "1,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["source"], "greedy");
    let steps = v["result"]["trace"]["steps"].as_array().unwrap();
    let last = &steps.last().unwrap()["d"];
    assert_eq!(last, &serde_json::json!([3, 1, 2, 4, 1, 3, 2]));
}

#[test]
fn fallback_pair_and_impossible_pair() {
    let (code, v) = json(&["stabgen", "--pair", "0,6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["source"], "fallback");
    assert_eq!(run(&["stabgen", "--pair", "0,3"]).status.code(), Some(1));
}

#[test]
fn cost_numbers() {
    let (code, v) = json(&["cost", "--code", "all"]);
    assert_eq!(code, 0);
    let cols = v["result"]["columns"].as_array().unwrap();
    let by_name = |n: &str| cols.iter().find(|c| c["name"] == n).unwrap().clone();
    let steane = by_name("ternary Steane");
    assert_eq!(
        (steane["total_gates"].as_u64(), steane["depth"].as_u64()),
        (Some(38), Some(8))
    );
    let prop = by_name("proposed");
    assert_eq!(
        (prop["total_gates"].as_u64(), prop["depth"].as_u64()),
        (Some(48), Some(10))
    );
    assert_eq!(prop["bit_gates"], 24);
    assert_eq!(prop["phase_gates"], 24);
}

#[test]
fn diagram_needs_single_code() {
    assert_eq!(run(&["cost", "--diagram"]).status.code(), Some(1));
    let o = run(&["cost", "--code", "proposed", "--diagram"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("```"));
}

#[test]
fn verify_exit_codes() {
    for (args, want) in [
        (vec!["verify", "--suite", "lemma1"], 0),
        (vec!["verify", "--suite", "stabilize"], 0),
        (vec!["verify", "--suite", "lemma4"], 0),
        (vec!["verify", "--suite", "kl", "--code", "steane"], 0),
        (vec!["verify", "--suite", "single", "--code", "steane"], 0),
        // Report-only on the proposed code.
        (vec!["verify", "--suite", "kl"], 0),
        (vec!["verify", "--suite", "phase-sweep"], 0),
        // Single Z errors on q2, q3 and q6 are not corrected on superpositions.
        (vec!["verify", "--suite", "single"], 1),
        (vec!["verify", "--suite", "logicals", "--wmax", "4"], 2),
        (vec!["verify", "--suite", "pairs", "--code", "steane"], 1),
    ] {
        assert_eq!(run(&args).status.code(), Some(want), "{args:?}");
    }
}

#[test]
fn single_sweep_counts() {
    let (code, v) = json(&["verify", "--suite", "single"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let c = &v["result"]["counts"];
    assert_eq!(c["corrected"], 26);
    assert_eq!(c["degenerate_corrected"], 12);
    assert_eq!(c["logical_fault"], 18);
}

#[test]
fn sequential_flag_matches() {
    let a = stdout(&run(&["verify", "--suite", "pairs"]));
    let b = stdout(&run(&["--sequential", "verify", "--suite", "pairs"]));
    assert_eq!(a, b);
    assert!(a.contains("12/18 eligible pairs supported"));
}
