//! End-to-end behaviour of the `primegraph` binary.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_primegraph"));
    cmd.env_remove("PRIMEGRAPH_DATA");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn group_reports_triangles() {
    let out = run(&["group", "PSL2:29"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("degrees: {1,15,28,29,30}"), "{text}");
    assert!(text.contains("triangle: (2,3,5)"), "{text}");

    let out = run(&["group", "2.A6", "--degree-graph"]);
    let text = stdout(&out);
    assert!(text.contains("triangle: none (triangle-free)"), "{text}");
    assert!(text.contains("degree graph triangle: (4,8,10)"), "{text}");
}

#[test]
fn group_json_and_partial_data() {
    let out = run(&["group", "PSL2:64", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["figure_a"], "Second");
    assert_eq!(json["prime_graph"]["components"], 3);

    let out = run(&["group", "Sz:8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("partial vertex data"), "{text}");
    assert!(text.contains("triangle: (5,7,13)"), "{text}");
}

#[test]
fn graph_serializations() {
    let out = run(&["graph", "PSL2:64", "--format", "dot"]);
    assert_eq!(
        stdout(&out),
        "graph G {\n  2;\n  3;\n  5;\n  7;\n  13;\n  3 -- 7;\n  5 -- 13;\n}\n"
    );
    let out = run(&["graph", "PSL2:64", "--format", "json"]);
    assert_eq!(
        stdout(&out),
        "{\"vertices\":[2,3,5,7,13],\"edges\":[[3,7],[5,13]],\"partial\":false}\n"
    );
    let out = run(&["graph", "PSL2:4", "--format", "dot"]);
    assert_eq!(stdout(&out), "graph G {\n  2;\n  3;\n  5;\n}\n");
}

#[test]
fn usage_errors_exit_one_without_output() {
    for args in [
        &["group", "nope"][..],
        &["group", "PSL2:6"],
        &["group", "PSL2:29", "--format", "dot"],
        &["verify", "thm-z"],
        &["verify", "psl2-even", "--max-f", "99"],
        &["classify", "--edges", "2-9"],
        &["frobnicate"],
        &["--format", "xml", "group", "A5"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = run(&["group", "nope"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("available ids") && err.contains("PSL3(3)"),
        "{err}"
    );
    let out = run(&["classify", "--edges", "2-9"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("9"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_outputs_are_reproducible() {
    let args = [
        "verify",
        "thm-b",
        "--max-f",
        "24",
        "--no-timing",
        "--format",
        "json",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let single = bin().args(args).args(["--jobs", "1"]).output().unwrap();
    assert_eq!(first.stdout, single.stdout);
    let json: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let notable: Vec<String> = serde_json::from_value(json["notable"].clone()).unwrap();
    for f in [6, 9] {
        let q = 1u64 << f;
        assert!(
            notable
                .iter()
                .any(|n| n == &format!("PSL2({q}) realizes Second")),
            "{notable:?}"
        );
    }
}

#[test]
fn palfy_reports_violating_triple() {
    let out = run(&["verify", "palfy:PSL2:8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("violating triple for PSL2(8): (2,3,7)"));
}

#[test]
fn counterexamples_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("groups.txt");
    // A solvable tag on a degree set that violates Palfy's condition.
    std::fs::write(&path, "bad;1,7,8,9;quoted;solvable\n").unwrap();
    let out = bin()
        .env("PRIMEGRAPH_DATA", &path)
        .args(["verify", "palfy:bad"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("result: FAILED"));
}

#[test]
fn data_gap_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("groups.txt");
    std::fs::write(&path, "A5;1,3,4,5;external-table\n").unwrap();
    let out = bin()
        .env("PRIMEGRAPH_DATA", &path)
        .args(["verify", "excluded-families"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn classify_from_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("graph.txt");
    std::fs::write(&input, "# K_{2,3}\n2-5, 2-7, 2-11\n3-5, 3-7, 3-11\n").unwrap();
    let output = dir.path().join("verdict.json");
    let out = bin()
        .args(["classify", "--file"])
        .arg(&input)
        .args(["--format", "json", "--output"])
        .arg(&output)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.ends_with('\n'));
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["verdict"], "OccursWithWitness");

    let out = run(&["classify", "--edges", "2-3,3-5,5-7"]);
    assert!(stdout(&out).contains("ProvenImpossible: Lewis-White"));
    let out = run(&["classify", "--edges", "2-3,2-5,3-5"]);
    assert!(stdout(&out).contains("OccursWithWitness: PSL3(3)"));
}
