use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_perturbcc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("perturbcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn last_json(out: &Output) -> Value {
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(stdout.lines().last().expect("some output")).unwrap()
}

const EXAMPLE: &str = "n 8\n1 2\n2 3\n2 6\n3 4\n3 7\n5 6\n6 7\n7 8\n";

#[test]
fn gss_on_example_graph_takes_two_iterations() {
    let file = scratch("example.txt", EXAMPLE);
    let out = run(&["cc", "--algo", "gss", "-i", file.to_str().unwrap(), "--start", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = last_json(&out);
    assert_eq!(v["K"], 1);
    assert_eq!(v["iterations"], 2);
    assert_eq!(v["components"], serde_json::json!([[1, 2, 3, 4, 5, 6, 7, 8]]));
}

#[test]
fn trace_lines_precede_the_result() {
    let file = scratch("example-trace.txt", EXAMPLE);
    let out = run(&["cc", "--algo", "sis", "-i", file.to_str().unwrap(), "--trace"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], serde_json::json!({"start": 1, "k": 1, "new": [2]}));
    assert_eq!(lines[3]["new"], serde_json::json!([8]));
    assert_eq!(lines[4]["iterations"], 4);
}

#[test]
fn every_algorithm_agrees_on_a_small_forest() {
    let file = scratch("forest.txt", "n 6\n1 4\n4 6\n2 3\n");
    for algo in ["bfs", "sis", "gss", "exact"] {
        let out = run(&["cc", "--algo", algo, "-i", file.to_str().unwrap()]);
        assert!(out.status.success(), "{algo}");
        let v = last_json(&out);
        assert_eq!(v["components"], serde_json::json!([[1, 4, 6], [2, 3], [5]]), "{algo}");
        assert_eq!(v["K"], 3);
    }
}

#[test]
fn generated_chain_union_verifies() {
    let dir = std::env::temp_dir().join(format!("perturbcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("chains.txt");
    let out = run(&["gen", "--chains", "3", "--len", "4", "--seed", "7", "-o", file.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["verify", "-i", file.to_str().unwrap(), "--exact"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = last_json(&out);
    assert_eq!(v["K"], 3);
    assert_eq!(v["ok"], true);
}

#[test]
fn exact_mode_refuses_graphs_above_cap() {
    let mut text = String::from("n 70\n");
    for v in 1..70 {
        text.push_str(&format!("{v} {}\n", v + 1));
    }
    let file = scratch("seventy.txt", &text);
    let out = run(&["cc", "--algo", "exact", "-i", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("64"), "{stderr}");
    // a raised cap lifts the refusal
    let out = run(&["cc", "--algo", "exact", "-i", file.to_str().unwrap(), "--exact-cap", "80"]);
    assert!(out.status.success());
    assert_eq!(last_json(&out)["K"], 1);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&["cc", "--algo", "dfs", "-i", "x"]).status.code(), Some(2));
    assert_eq!(run(&["cc", "--algo", "gss", "-i", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = scratch("bad.txt", "1 2\n2 three\n");
    let out = run(&["cc", "--algo", "gss", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    let file = scratch("tiny.txt", "1 2\n");
    assert_eq!(run(&["cc", "--algo", "gss", "-i", file.to_str().unwrap(), "--start", "9"]).status.code(), Some(2));
}

#[test]
fn bench_csv_is_stable_in_iteration_columns() {
    let args = ["bench", "--suite", "chains", "--sizes", "5x8,3x4", "--runs", "1", "--seed", "3"];
    let a = String::from_utf8(run(&args).stdout).unwrap();
    let b = String::from_utf8(run(&args).stdout).unwrap();
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert!(!a.contains('\r'));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines[0], "n,m,K,strategy,total_iterations,wall_ns");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("40,35,5,bfs,"));
    let empty = String::from_utf8(run(&["bench", "--suite", "chains", "--sizes", ""]).stdout).unwrap();
    assert_eq!(empty, "n,m,K,strategy,total_iterations,wall_ns\n");
}

#[test]
fn detlab_reports_polynomial_and_checks() {
    let file = scratch("triangle.txt", "1 2\n2 3\n1 3\n");
    let out = run(&["detlab", "-i", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v = last_json(&out);
    assert_eq!(v["coefficients"], serde_json::json!([1, 0, -3, 2]));
    assert_eq!(v["polynomial"], "d^3 - 3d + 2");
    assert_eq!(v["ok"], true);
    let big = scratch("ten.txt", "n 10\n1 2\n");
    assert_eq!(run(&["detlab", "-i", big.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn random_generator_writes_requested_size() {
    let out = run(&["gen", "--vertices", "12", "--edges", "20", "--seed", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n 12\n"));
    assert_eq!(text.lines().count(), 21);
    assert_eq!(run(&["gen", "--chains", "3"]).status.code(), Some(2));
}
