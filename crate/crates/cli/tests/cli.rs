//! End-to-end checks of the `rpt` binary: output bytes, exit codes, and the
//! JSON schema.

use std::process::{Command, Output};

fn rpt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpt"))
        .args(args)
        .env_remove("RPT_MAX_CELLS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn stirling_csv_reproduces_the_published_triangle() {
    let out = rpt(&["stirling", "--set", "{1,3,6}", "--n", "8", "--format", "csv"]);
    assert!(out.status.success());
    let expected = "\
1,0,0,0,0,0,0,0,0
0,1,0,0,0,0,0,0,0
0,0,1,0,0,0,0,0,0
0,1,0,1,0,0,0,0,0
0,0,4,0,1,0,0,0,0
0,0,0,10,0,1,0,0,0
0,1,10,0,20,0,1,0,0
0,0,7,70,0,35,0,1,0
0,0,0,28,280,0,56,0,1
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn riordan_inverse_prints_the_published_triangle() {
    let out = rpt(&[
        "riordan", "--set", "{1,3,6}", "--n", "8", "--inverse", "--format", "csv",
    ]);
    assert!(out.status.success());
    let last = stdout(&out).lines().last().unwrap().to_string();
    assert_eq!(last, "0,84,-2800,-28,840,0,-56,0,1");
}

#[test]
fn bell_of_zero_is_one() {
    let out = rpt(&["bell", "--set", "all", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "B(0) = 1");
}

#[test]
fn rationals_are_rendered_exactly() {
    let out = rpt(&[
        "polybernoulli", "--set", "all", "--n", "3", "--k", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,value\n0,1\n1,1/4\n2,-1/36\n3,-1/24\n");
}

#[test]
fn verify_lonesum_suite_passes() {
    let out = rpt(&["verify", "--suite", "lonesum", "--max-cells", "12"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("ok lonesum:"));
}

#[test]
fn parse_errors_exit_2() {
    let out = rpt(&["stirling", "--set", "nonsense", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rpt(&["stirling", "--n", "3"]); // missing --set
    assert_eq!(out.status.code(), Some(2));

    let out = rpt(&["stirling", "--set", "all", "--n", "5", "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guardrails_exit_3() {
    let out = rpt(&["verify", "--suite", "lonesum", "--max-cells", "23"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_override_raises_the_scan_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_rpt"))
        .args(["verify", "--suite", "riordan", "--max-cells", "22"])
        .env("RPT_MAX_CELLS", "24")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn json_schema_and_byte_stability() {
    let args = ["lonesum", "--s1", "even", "--s2", "odd", "--n", "4", "--k", "4",
        "--variant", "with-zeros", "--format", "json"];
    let first = rpt(&args);
    assert!(first.status.success());
    let second = rpt(&args);
    assert_eq!(first.stdout, second.stdout, "output must be byte-stable");

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid json");
    assert_eq!(doc["command"], "lonesum");
    assert_eq!(doc["params"]["s1"], "even");
    assert!(doc["provenance"]["routes_compared"].is_array());
    assert!(doc["values"].is_array());
    // Every value is a string: exact integers, never floats.
    for row in doc["values"].as_array().unwrap() {
        for v in row.as_array().unwrap() {
            assert!(v.is_string());
        }
    }
}

#[test]
fn matrix_analysis_decodes_the_published_example() {
    use std::io::Write;

    let matrix = "01001000\n11111010\n11111111\n11111111\n01011010\n01011010\n11111010\n01001000\n";
    let mut child = Command::new(env!("CARGO_BIN_EXE_rpt"))
        .args(["lonesum", "--matrix", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(matrix.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lonesum: true"));
    assert!(text.contains("row blocks: {1,8} {5,6} {2,7} {3,4}"));
    assert!(text.contains("col blocks: {2,5} {4,7} {1,3} {6,8}"));
}
