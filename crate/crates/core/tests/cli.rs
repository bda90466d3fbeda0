//! Behavioral tests of the command-line binary: worked examples, exit
//! codes, and the machine-readable output mode.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn integrate_dqs_top_element() {
    let out = run(&["integrate", "builtin:dqs", "--elem", "a*b"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("value = 1"), "{text}");
    assert!(text.contains("delta = a*b"), "{text}");
}

#[test]
fn integrate_dqs_a_realization() {
    let out = run(&["integrate", "builtin:dqs", "--elem", "a"]);
    let text = stdout(&out);
    assert!(text.contains("value = -1"), "{text}");
    // Ē·a·E = -ab(1-2y)
    assert!(text.contains("realization = -a*b + 2*a*b*y"), "{text}");
}

#[test]
fn integrate_fermionic_line() {
    let out = run(&["integrate", "builtin:fermionic-line", "--elem", "xi"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("value = 1"), "{text}");
    assert!(text.contains("realization = xi"), "{text}");
}

#[test]
fn integrate_qplane_respects_q_eval() {
    let out = run(&[
        "integrate",
        "builtin:q-plane:2",
        "--elem",
        "x1*x2",
        "--q-eval",
        "3/2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("value = 1"), "{}", stdout(&out));
}

#[test]
fn tensors_dqs_prints_slices_and_note() {
    let out = run(&["tensors", "builtin:dqs"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("M_0 (1):"), "{text}");
    assert!(text.contains("W_2 (y):"), "{text}");
    assert!(text.contains("note: W_2 row x*y, column x is -1"), "{text}");
}

#[test]
fn check_reports_every_axiom() {
    let out = run(&["check", "builtin:cyclic-group:4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("hopf associativity: pass"), "{text}");
    assert!(text.contains("all checks pass"), "{text}");
}

#[test]
fn smash_dqs_lists_cross_relations() {
    let out = run(&["smash", "builtin:dqs"]);
    let text = stdout(&out);
    assert!(text.contains("x*a = 1 + a*x + b"), "{text}");
    assert!(text.contains("y*b = 1 - 2*y + b - b*y"), "{text}");
}

#[test]
fn dual_dqs_emits_presentation() {
    let out = run(&["dual", "builtin:dqs"]);
    let text = stdout(&out);
    assert!(text.contains("a^2 = 0"), "{text}");
    assert!(text.contains("b*a = -2*a - a*b"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["check", "builtin:heisenberg"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("error:"), "{}", stderr(&out));

    let out = run(&["integrate", "builtin:dqs"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--elem"), "{}", stderr(&out));

    let out = run(&["integrate", "builtin:dqs", "--elem", "nonsense+"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1_with_error_name() {
    // a parseable presentation whose antipode is wrong fails the axiom
    // gate, which is a domain error rather than a usage error
    let src = "algebra broken\ngenerators x\nrelations\n  x^2 = 0\nbasis 1 x\n\
               coproduct\n  x -> x(*)1 + 1(*)x\ncounit\n  x -> 0\nantipode\n  x -> x\n";
    let path = std::env::temp_dir().join("hopfint_cli_broken.hopf");
    std::fs::write(&path, src).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("AxiomViolation"), "{}", stderr(&out));
}

#[test]
fn json_mode_is_schema_stable_and_value_identical() {
    let text_out = run(&["integrate", "builtin:dqs", "--elem", "a*b"]);
    let json_out = run(&[
        "integrate",
        "builtin:dqs",
        "--elem",
        "a*b",
        "--output",
        "json",
    ]);
    assert_eq!(json_out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let obj = doc.as_object().unwrap();
    for key in ["command", "input", "results", "warnings", "errors"] {
        assert!(obj.contains_key(key), "missing key {key}");
    }
    assert_eq!(doc["command"], "integrate");
    assert_eq!(doc["input"], "builtin:dqs");
    assert!(doc["errors"].as_array().unwrap().is_empty());
    // text mode prints exactly the JSON result lines
    let text = stdout(&text_out);
    let text_lines: Vec<&str> = text.lines().collect();
    let json_lines: Vec<String> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(text_lines, json_lines);
}

#[test]
fn json_mode_carries_errors() {
    let out = run(&["check", "builtin:heisenberg", "--output", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!doc["errors"].as_array().unwrap().is_empty());
}

#[test]
fn file_input_round_trips_through_builtin_source() {
    let src_out = run(&["builtin", "builtin:dqs"]);
    assert_eq!(src_out.status.code(), Some(0));
    let path = std::env::temp_dir().join("hopfint_cli_dqs.hopf");
    std::fs::write(&path, stdout(&src_out)).unwrap();
    let out = run(&["integrate", path.to_str().unwrap(), "--elem", "a*b"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("value = 1"), "{}", stdout(&out));
}
