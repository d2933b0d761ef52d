use std::process::Command;

use dream_cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["dream"];
    argv.extend_from_slice(args);
    let out = run(&argv);
    let v = serde_json::from_str(out.stdout.trim()).unwrap_or_else(|e| panic!("{e}: {:?}", out.stdout));
    (out.code, v)
}

#[test]
fn mord_outputs() {
    assert_eq!(json(&["mord", "x^5+x^3*y^3+y^7"]), (0, serde_json::json!({ "mord": ["5", "7"] })));
    assert_eq!(json(&["mord", "1"]), (0, serde_json::json!({ "mord": ["0"] })));
    let (code, v) = json(&["mord", "x^2 - y^3 + z^4"]);
    assert_eq!(code, 0);
    assert_eq!(v["mord"], serde_json::json!(["2", "3", "4"]));
}

#[test]
fn center_lists_basis_and_chain() {
    let (code, v) = json(&["center", "x^5+x^3*y^3+y^7"]);
    assert_eq!(code, 0);
    assert_eq!(v["center"], "[x^5, y^7]");
    assert_eq!(v["chain"].as_array().unwrap().len(), 2);
    assert_eq!(v["leading_term_basis"], serde_json::json!(["x^5", "y^7"]));
}

#[test]
fn vars_extend_the_ambient() {
    let (code, v) = json(&["mord", "x^2", "--vars", "x,y"]);
    assert_eq!(code, 0);
    assert_eq!(v["mord"], serde_json::json!(["2"]));
    let (code, v) = json(&["mord", "x^2 + z", "--vars", "x,y"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "usage");
}

#[test]
fn rounding_of_a_fractional_center() {
    let (code, v) = json(&["round", "[x^5, y^(15/2)]"]);
    assert_eq!(code, 0);
    assert_eq!(v["rounding"].as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes_follow_error_classes() {
    let (code, v) = json(&["mord", "x^^2"]);
    assert_eq!((code, v["error"]["code"].as_str()), (2, Some("parse")));
    let (code, v) = json(&["--degree-cap", "3", "mord", "x^5 + y^7"]);
    assert_eq!((code, v["error"]["code"].as_str()), (2, Some("degree-cap")));
    let (code, v) = json(&["mord", "0"]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("zero-ideal")));
    let (code, v) = json(&["tschirnhaus", "x^5+x^3*y^3+y^7", "--center", "[x^4, y^7]"]);
    assert_eq!(code, 1, "{v}");
    let (code, v) = json(&["staircase", "(2, 3, 6)"]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("arity-mismatch")));
    assert_eq!(run(&["dream", "frobnicate"]).code, 2);
    assert_eq!(run(&["dream"]).code, 2);
}

#[test]
fn tschirnhaus_certifies_the_canonical_center() {
    let (code, v) = json(&["tschirnhaus", "x^5+x^3*y^3+y^7"]);
    assert_eq!(code, 0);
    assert_eq!(v["center"], "[x^5, y^7]");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    let (code, _) = json(&["tschirnhaus", "x^5+x^3*y^3+y^7", "--center", "[x^5, y^7]", "--verify"]);
    assert_eq!(code, 0);
}

#[test]
fn principalize_reaches_the_unit_ideal() {
    let (code, v) = json(&["principalize", "x^2 - y^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "principalized");
    let first = &v["steps"][0];
    assert_eq!(first["mord"], serde_json::json!(["2", "3"]));
    assert_eq!(first["N"], 6);
    assert_eq!(first["charts"].as_array().unwrap().len(), 2);
}

#[test]
fn step_limit_caps_the_run() {
    let (code, v) = json(&["principalize", "x^5+x^3*y^3+y^7", "--max-steps", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "resource-capped");
}

#[test]
fn embedded_resolution_of_a_cusp() {
    let (code, v) = json(&["embed-resolve", "x^2 - y^3", "--codim", "1"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "resolved");
}

#[test]
fn tubes_and_rees_pieces() {
    let (code, v) = json(&["tube", "(5, 7)", "--base", "b"]);
    assert_eq!(code, 0);
    assert_eq!(v["base_vars"], serde_json::json!(["b"]));
    assert_eq!(v["rank"], 23);
    let (code, v) = json(&["tube", "[x^2, y^3]"]);
    assert_eq!(code, 0);
    assert_eq!(v["ideal"], serde_json::json!(["x^2", "x*y^2", "y^3"]));
    let (code, v) = json(&["rees", "[x^2, y^3]"]);
    assert_eq!(code, 0);
    assert_eq!(v["N"], 6);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 7);
    assert_eq!(v["pieces"][6]["generators"], serde_json::json!(["x^2", "x*y^2", "y^3"]));
}

#[test]
fn staircase_formats() {
    let svg = run(&["dream", "staircase", "(5, 7)"]);
    assert_eq!(svg.code, 0);
    assert!(svg.stdout.starts_with("<svg"));
    let text = run(&["dream", "--format", "text", "staircase", "(5, 7)", "--overlay", "(6, 6)"]);
    assert_eq!(text.stdout.matches('#').count(), 6);
    let (_, v) = json(&["--format", "json", "staircase", "(5, 7)"]);
    assert_eq!(v["generators"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["dream", "--format", "svg", "mord", "x"]).code, 2);
}

#[test]
fn batch_runs_every_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jobs.txt");
    std::fs::write(
        &path,
        "# invariants\nmord \"x^5+x^3*y^3+y^7\"\n\nmord 1   # trivial\nround \"[x^2, y^(5/2)]\"\nmord \"x^^\"\n",
    )
    .unwrap();
    let out = run(&["dream", "--batch", path.to_str().unwrap()]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], r#"{"mord":["5","7"]}"#);
    assert_eq!(lines[1], r#"{"mord":["0"]}"#);
    assert_eq!(out.code, 2);
}

#[test]
fn output_file_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    let out = run(&["dream", "principalize", "x^5+x^3*y^3+y^7", "--output", p]);
    assert_eq!((out.code, out.stdout.as_str()), (0, ""));
    let (code, v) = json(&["replay", p]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ok"], true);
    assert!(v["steps"].as_u64().unwrap() >= 1);

    // Tamper with the recorded root.
    let mut trace: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    trace["steps"][0]["N"] = 1.into();
    std::fs::write(&path, trace.to_string()).unwrap();
    let (code, v) = json(&["replay", p]);
    assert_eq!(code, 1);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 1);
}

#[test]
fn text_round_trips_through_the_center_verb() {
    let (_, v) = json(&["center", "(x + y^2)^3 + y^7"]);
    let center = v["center"].as_str().unwrap().to_string();
    let (code, again) = json(&["round", &center]);
    assert_eq!(code, 0, "{again}");
    assert_eq!(again["center"], center.as_str());
}

#[test]
fn binary_reads_the_environment() {
    let bin = env!("CARGO_BIN_EXE_dream");
    let out = Command::new(bin).args(["mord", "x^5 + y^7"]).env("DREAM_DEGREE_CAP", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("degree-cap"));
    let out = Command::new(bin).args(["mord", "x^5 + y^7"]).env_remove("DREAM_DEGREE_CAP").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"mord":["5","7"]}"#);
}

#[test]
fn recorded_traces_replay_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    for (k, (verb, ideal, extra)) in [
        ("principalize", "x^2 - y^3", None),
        ("principalize", "x*y^2 + y^4", None),
        ("principalize", "(x^4, x*y^4, x^2*y*z^2)", None),
        ("embed-resolve", "x^2 - y^3", Some("1")),
    ]
    .into_iter()
    .enumerate()
    {
        let path = dir.path().join(format!("t{k}.json"));
        let p = path.to_str().unwrap();
        let mut argv = vec!["dream", verb, ideal, "--output", p];
        if let Some(c) = extra {
            argv.extend(["--codim", c]);
        }
        assert_eq!(run(&argv).code, 0, "{ideal}");
        let (code, v) = json(&["replay", p]);
        assert_eq!(code, 0, "{ideal}: {v}");
        assert!(v["charts"].as_u64().unwrap() >= 2);
    }
}
