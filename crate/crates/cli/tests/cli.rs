//! End-to-end checks of the command-line surface, run against the built
//! binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twisted-hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn count_both_engines_flagship() {
    let out = run(&["count", "--g", "1", "--mu", "4", "--nu", "2,2", "--engine", "both"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "160 == 160 OK\n");
}

#[test]
fn count_rational_value() {
    let out = run(&["count", "--g", "0", "--mu", "2", "--nu", "2", "--engine", "both"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/2 == 1/2 OK\n");
}

#[test]
fn count_default_engine_plain_value() {
    let out = run(&["count", "--g", "0", "--mu", "1", "--nu", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn count_json_mirrors_text() {
    let out = run(&[
        "count", "--g", "1", "--mu", "4", "--nu", "2,2", "--engine", "both", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["brute"], "160");
    assert_eq!(value["tropical"], "160");
    assert_eq!(value["equal"], true);
    assert_eq!(value["mu"], serde_json::json!([4]));
}

#[test]
fn count_cap_exceeded_exits_3() {
    let out = run(&["count", "--g", "0", "--mu", "7", "--nu", "7", "--engine", "brute"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cap_env_variable_raises_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_twisted-hurwitz"))
        .args(["count", "--g", "0", "--mu", "7", "--nu", "6,1", "--engine", "brute"])
        .env("TWISTED_HURWITZ_CAP_2N", "14")
        .output()
        .unwrap();
    assert!(out.status.success(), "cap raised via env should allow n=7");
}

#[test]
fn graphs_jsonl_flagship() {
    let out = run(&["graphs", "--g", "1", "--mu", "4", "--nu", "2,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 9, "8 graphs plus a summary");
    let mut mults: Vec<String> = lines[..8]
        .iter()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["multiplicity"].as_str().unwrap().to_string()
        })
        .collect();
    mults.sort();
    let mut expected: Vec<String> = ["72", "4", "4", "24", "16", "4", "12", "24"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    expected.sort();
    assert_eq!(mults, expected);
    let summary: serde_json::Value = serde_json::from_str(lines[8]).unwrap();
    assert_eq!(summary["total"], "160");
}

#[test]
fn graphs_list_zero_multiplicity_covers_by_default() {
    let out = run(&["graphs", "--g", "0", "--mu", "1", "--nu", "1"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["multiplicity"], "0");
}

#[test]
fn graphs_dot_output() {
    let out = run(&["graphs", "--g", "0", "--mu", "4", "--nu", "3,1", "--format", "dot"]);
    let text = stdout(&out);
    assert_eq!(text.matches("digraph").count(), 3);
    assert!(text.contains("peripheries=2"));
    assert!(text.contains("total 18"));
}

#[test]
fn poly_genus_one_single_part() {
    let out = run(&["poly", "--g", "1", "--shape", "1,1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "2/3*mu1^3 - mu1^2 + 1/3*mu1; degrees {3,2,1}\n"
    );
}

#[test]
fn poly_needs_signature_when_walls_exist() {
    let out = run(&["poly", "--g", "0", "--shape", "2,2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["poly", "--g", "0", "--shape", "2,2", "--signature", "+,+"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("degrees {3,2}"));
}

#[test]
fn btilde_lists_class() {
    let out = run(&["btilde", "--lambda", "2,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.trim().lines().count(), 6);
    assert!(text.contains("(1 2)(3)(4 5)(6)"));
}

#[test]
fn wallcross_identity_summary() {
    let out = run(&["wallcross", "--shape", "2,2", "--wall", "I=1:J=1", "--points", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("2/2 points: LHS == RHS"));
}

#[test]
fn output_is_deterministic() {
    let first = stdout(&run(&["graphs", "--g", "1", "--mu", "4", "--nu", "2,2"]));
    let second = stdout(&run(&["graphs", "--g", "1", "--mu", "4", "--nu", "2,2"]));
    assert_eq!(first, second);
    let threads1 = stdout(&run(&[
        "count", "--g", "1", "--mu", "4", "--nu", "2,2", "--engine", "brute", "--threads", "1",
    ]));
    let threads4 = stdout(&run(&[
        "count", "--g", "1", "--mu", "4", "--nu", "2,2", "--engine", "brute", "--threads", "4",
    ]));
    assert_eq!(threads1, threads4);
}

#[test]
fn tuple_dump_lines_parse() {
    let out = run(&[
        "count", "--g", "0", "--mu", "2", "--nu", "2", "--engine", "brute", "--dump-tuples",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    // 4 tuples plus the final count line
    assert_eq!(lines.len(), 5);
    let mut transitive = 0;
    for line in &lines[..4] {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["sigma1"].is_string());
        assert!(v["etas"].is_array());
        if v["transitive"] == true {
            transitive += 1;
        }
    }
    assert_eq!(transitive, 4);
    assert_eq!(lines[4], "1/2");
}

#[test]
fn profile_reordering_warns() {
    let out = run(&["count", "--g", "0", "--mu", "1,2", "--nu", "2,1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reordered"));
}
