//! End-to-end tests of the binary: spawn it, check exit codes, parse
//! its reports.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seifert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout parses as JSON")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn floer_certified_report() {
    let out = run(&["--json", "floer", "brieskorn", "2", "3", "11"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["results"]["verdict"], "yes");
    assert_eq!(v["results"]["m"], "5");
    let towers = v["results"]["module"]["towers"].as_array().unwrap();
    assert_eq!(towers.len(), 2);
    assert_eq!(towers[0]["base_offset"], "0");
    assert_eq!(towers[0]["length"], Value::Null);
    assert_eq!(towers[1]["base_offset"], "-1");
    assert_eq!(towers[1]["length"], "1");
    assert_eq!(v["results"]["module"]["reduced_rank"], "1");
    let checks = v["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["outcome"] == "pass"));
}

#[test]
fn floer_uncertified_names_the_witness() {
    let out = run(&["--json", "floer", "brieskorn", "2", "3", "13"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["verdict"], "no");
    assert_eq!(v["results"]["module"], Value::Null);
    let checks = v["results"]["checks"].as_array().unwrap();
    let transversality = checks.iter().find(|c| c["name"] == "transversality").unwrap();
    assert_eq!(transversality["outcome"], "fail");
    let witness = transversality["witness"].as_str().unwrap();
    assert!(witness.contains("rank 1"), "witness was: {witness}");
}

#[test]
fn fsw_on_uncertified_manifold_exits_two() {
    let out = run(&["fsw", "brieskorn", "2", "3", "13", "--power", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    assert!(
        stderr(&out).contains("transversality: fail"),
        "stderr was: {}",
        stderr(&out)
    );
}

#[test]
fn fsw_magnitude_and_assumptions() {
    let out = run(&["--json", "fsw", "brieskorn", "2", "3", "11", "--power", "-3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["magnitude"], "15");
    assert_eq!(v["results"]["sign_ambiguous"], true);
    assert_eq!(v["results"]["cobordism_degree"], "5");
    assert_eq!(v["assumptions"].as_array().unwrap().len(), 2);

    let out = run(&[
        "--json", "fsw", "brieskorn", "2", "3", "11", "--power", "0", "--b-plus", "3",
    ]);
    let v = json(&out);
    assert_eq!(v["results"]["magnitude"], "0");
    assert_eq!(v["results"]["sign_ambiguous"], false);
    assert_eq!(v["assumptions"].as_array().unwrap().len(), 3);
}

#[test]
fn spectrum_default_window_is_certificate_sized() {
    let out = run(&["--json", "spectrum", "brieskorn", "2", "3", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["lambda_max"], "3");
    let entries = v["results"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["level"], "1/2");
    assert_eq!(entries[0]["dim_plus"], "1");
    assert_eq!(entries[0]["weight_plus"], "0");
    assert_eq!(entries[0]["weight_minus"], "1");
}

#[test]
fn spectrum_flag_window() {
    let out = run(&[
        "--json", "spectrum", "brieskorn", "2", "3", "23", "--lambda-max", "35/2",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let levels: Vec<&str> = v["results"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["level"].as_str().unwrap())
        .collect();
    assert_eq!(levels, ["-31/2", "-19/2", "-7/2", "5/2", "17/2"]);
}

#[test]
fn critical_report_grading_offsets() {
    let out = run(&["--json", "critical", "brieskorn", "2", "3", "23"]);
    let v = json(&out);
    let irreducible = v["results"]["irreducible"].as_array().unwrap();
    assert_eq!(irreducible.len(), 4);
    let reducible = v["results"]["reducible"].as_array().unwrap();
    assert_eq!(reducible.len(), 2);
    assert_eq!(reducible[0]["level"], "5/2");
    assert_eq!(reducible[0]["grading_offset"], "0");
    assert_eq!(reducible[1]["level"], "17/2");
    assert_eq!(reducible[1]["grading_offset"], "4");
}

#[test]
fn flows_report_names_targets() {
    let out = run(&["--json", "flows", "brieskorn", "2", "3", "23"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["transversality"]["transverse"], false);
    let flows = v["results"]["flows"].as_array().unwrap();
    // two bundles, each with: one irr target, two eigenspace levels,
    // one floor target
    assert_eq!(flows.len(), 8);
    let circle = flows
        .iter()
        .find(|f| f["from"] == 0 && f["target"] == "irreducible")
        .unwrap();
    assert_eq!(circle["moduli"]["parametrized"], true);
    assert_eq!(circle["moduli"]["ambient_dim"], "1");
    let back = flows
        .iter()
        .find(|f| f["from"] == 1 && f["target"] == "irreducible")
        .unwrap();
    assert_eq!(back["moduli"]["empty"], true);
    let top = flows
        .iter()
        .find(|f| f["from"] == 0 && f["level"] == "17/2")
        .unwrap();
    assert_eq!(top["moduli"]["single_flowline"], true);
}

#[test]
fn info_normalizes_raw_seifert_data_with_warning() {
    let out = run(&[
        "--json", "info", "seifert", "--e", "-1", "--cone", "2:3", "--cone", "3:2", "--cone",
        "11:9",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("normalized"),
        "stderr was: {}",
        stderr(&out)
    );
    let v = json(&out);
    assert_eq!(v["results"]["bundle"]["e"], "0");
    assert_eq!(v["results"]["bundle"]["beta"], serde_json::json!([1, 2, 9]));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn info_on_non_qhs_input() {
    let out = run(&["--json", "info", "seifert", "--e", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["qhs3"], false);
    assert_eq!(v["results"]["h1_order"], Value::Null);

    let out = run(&["spectrum", "seifert", "--e", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("qhs3: fail"), "stderr: {}", stderr(&out));
}

#[test]
fn plumbing_file_round_trip() {
    let out = run(&["--json", "info", "plumbing-file", &fixture("e8.txt")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["results"]["h1_order"], "1");
    assert_eq!(v["results"]["fiber_degree"], "-1/30");

    let out = run(&["--json", "plumbing", "classify", "plumbing-file", &fixture("e8.txt")]);
    let v = json(&out);
    assert_eq!(v["results"]["classification"], "rational");
    assert_eq!(v["results"]["determinant"], "1");
    assert_eq!(
        v["results"]["fundamental_cycle"],
        serde_json::json!([2, 4, 6, 5, 4, 3, 2, 3])
    );
}

#[test]
fn plumbing_single_vertex_classifies_rational() {
    let out = run(&["--json", "plumbing", "classify", "plumbing-file", &fixture("single.txt")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["classification"], "rational");
    assert_eq!(v["results"]["fundamental_cycle"], serde_json::json!([1]));
}

#[test]
fn plumbing_chain_has_no_center() {
    let out = run(&["--json", "plumbing", "det", "plumbing-file", &fixture("chain.txt")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["results"]["determinant"], "3");
    assert_eq!(json(&out)["results"]["group_order"], "3");

    // odd vertex count: the raw determinant of a negative-definite form
    // is negative, group_order carries the homology order
    let out = run(&["--json", "plumbing", "det", "plumbing-file", &fixture("single.txt")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["results"]["determinant"], "-2");
    assert_eq!(json(&out)["results"]["group_order"], "2");

    let out = run(&["info", "plumbing-file", &fixture("chain.txt")]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("star-shape: fail"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn plumbing_star_rejects_graph_input() {
    let out = run(&["plumbing", "star", "plumbing-file", &fixture("e8.txt")]);
    assert_eq!(code(&out), 1);
}

#[test]
fn graph_file_parse_errors_name_the_line() {
    let dir = std::env::temp_dir();
    let path = dir.join("seifert-cli-bad-graph.txt");
    std::fs::write(&path, "v0 -2\nv1\n").unwrap();
    let out = run(&["plumbing", "det", "plumbing-file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));

    let out = run(&["plumbing", "det", "plumbing-file", "/nonexistent/graph.txt"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn monodromy_verdicts() {
    let out = run(&["--json", "monodromy", "2", "3", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["monodromy_order"], "42");
    assert_eq!(v["results"]["classification"], "minimally elliptic");
    assert_eq!(v["results"]["verdict"]["type"], "infinite-order");
    assert_eq!(v["results"]["verdict"]["m"], "1");

    let out = run(&["--json", "monodromy", "2", "3", "5"]);
    let v = json(&out);
    assert_eq!(v["results"]["verdict"]["type"], "rational-regime");

    let out = run(&["--json", "monodromy", "2", "3", "13"]);
    let v = json(&out);
    assert_eq!(v["results"]["verdict"]["type"], "inconclusive");
}

#[test]
fn verify_commands() {
    let out = run(&[
        "--json", "verify", "embedding", "--family", "plus", "--p", "3", "--s", "1",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["all_checks_pass"], true);
    assert_eq!(v["results"]["exponents"], serde_json::json!([3, 4, 5]));

    let out = run(&["--json", "verify", "laufer-brieskorn"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["all_pass"], true);
    assert_eq!(v["results"]["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn json_reports_round_trip_byte_identically() {
    let commands: [&[&str]; 12] = [
        &["info", "brieskorn", "2", "3", "11"],
        &["spectrum", "brieskorn", "2", "3", "23"],
        &["critical", "brieskorn", "2", "3", "23"],
        &["flows", "brieskorn", "2", "3", "23"],
        &["floer", "brieskorn", "2", "3", "7"],
        &["floer", "brieskorn", "2", "3", "5"],
        &["fsw", "brieskorn", "2", "3", "11", "--power", "2"],
        &["plumbing", "star", "brieskorn", "2", "3", "5"],
        &["plumbing", "classify", "brieskorn", "2", "3", "7"],
        &["monodromy", "2", "3", "11"],
        &["verify", "embedding", "--family", "minus", "--p", "5", "--s", "2"],
        &["verify", "laufer-brieskorn"],
    ];
    for command in commands {
        let mut args = vec!["--json"];
        args.extend_from_slice(command);
        let out = run(&args);
        assert_eq!(code(&out), 0, "{command:?}: {}", stderr(&out));
        let text = stdout(&out);
        let parsed: Value = serde_json::from_str(&text).expect("parses");
        let rewritten = format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap());
        assert_eq!(text, rewritten, "round trip differs for {command:?}");
        for key in ["assumptions", "command", "inputs", "results", "warnings"] {
            assert!(parsed.get(key).is_some(), "{command:?} lacks {key}");
        }
    }
}

#[test]
fn human_and_json_outputs_carry_the_same_numbers() {
    let human = stdout(&run(&["critical", "brieskorn", "2", "3", "23"]));
    let v = json(&run(&["--json", "critical", "brieskorn", "2", "3", "23"]));
    for reducible in v["results"]["reducible"].as_array().unwrap() {
        let level = reducible["level"].as_str().unwrap();
        assert!(human.contains(&format!("level: {level}")), "missing {level}");
        let offset = reducible["grading_offset"].as_str().unwrap();
        assert!(human.contains(&format!("grading_offset: {offset}")));
    }
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 1);

    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);

    let out = run(&["spectrum", "brieskorn", "2", "3", "7", "--lambda-max", "x/y"]);
    assert_eq!(code(&out), 1);

    let out = run(&["info", "seifert", "--e", "-2", "--cone", "nonsense"]);
    assert_eq!(code(&out), 1);
}
