//! End-to-end checks of the command-line binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chordal-braids"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

const P3: &str = r#"{"vertices": ["a", "b", "c"], "edges": [["a","b"],["b","c"]]}"#;
const C4: &str =
    r#"{"vertices": ["a","b","c","d"], "edges": [["a","b"],["b","c"],["c","d"],["d","a"]]}"#;

#[test]
fn chordal_prints_a_peo_certificate() {
    let (stdout, _, code) = run(&["chordal", P3]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["chordal"], true);
    let peo: Vec<String> = value["peo"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(peo.len(), 3);

    let (stdout, _, code) = run(&["chordal", C4]);
    assert_eq!(code, 1);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["chordal"], false);
}

#[test]
fn graph_files_and_edge_lists_load() {
    let dir = std::env::temp_dir().join("chordal-braids-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.txt");
    std::fs::write(&path, "# path graph\na b\nb c\n").unwrap();
    let (stdout, _, code) = run(&["peo", path.to_str().unwrap()]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("peo"));
}

#[test]
fn braid_eq_example() {
    let (_, _, code) = run(&[
        "braid",
        "eq",
        "A[1,2] A[1,3]",
        "A[1,3] A[1,2]",
        "--strands",
        "3",
    ]);
    assert_eq!(code, 1);
    // the full twist is central
    let (stdout, _, code) = run(&[
        "braid",
        "eq",
        "A[1,2] A[1,3] A[2,3] A[1,2]",
        "A[1,2] A[1,2] A[1,3] A[2,3]",
        "--strands",
        "3",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
}

#[test]
fn braid_nf_and_forget() {
    let (stdout, _, code) = run(&["braid", "nf", "A[1,2] A[1,3]", "--strands", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("A[1,2]"));
    assert!(stdout.contains("A[1,3]"));

    let (stdout, _, code) = run(&[
        "braid",
        "forget",
        "A[1,3] A[1,2]",
        "--keep",
        "1,2",
        "--strands",
        "3",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["word"], "A[1,2]");
}

#[test]
fn gamma_commands() {
    let (stdout, _, code) = run(&["gamma", "nf", P3, "E[a,b] E[b,c]"]);
    assert_eq!(code, 0, "stdout: {stdout}");

    let (_, _, code) = run(&["gamma", "eq", P3, "E[a,b] E[a,b]^-1", ""]);
    assert_eq!(code, 0);
    let (_, _, code) = run(&["gamma", "eq", P3, "E[a,b]", "E[b,c]"]);
    assert_eq!(code, 1);

    let (stdout, _, code) = run(&["gamma", "project", P3, "E[a,b]", "--simplex", "b"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["word"], "1");

    let (stdout, _, code) = run(&["gamma", "pullback-check", P3, "E[a,b] E[b,c]^-1"]);
    assert_eq!(code, 0, "stdout: {stdout}");
}

#[test]
fn tree_commands() {
    let (stdout, _, code) = run(&["tree", "profile", "(a(c),b)r;"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["root"], "r");

    let (stdout, _, code) = run(&["tree", "graph", "(a(c),b)r;", "--dot"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("graph G {"));
}

#[test]
fn invariants_with_oracle() {
    let (stdout, _, code) = run(&["invariants", P3, "--oracle"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    let value: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(value["regions"], 4);
    assert_eq!(value["oracle"]["ok"], true);
    assert_eq!(value["chromatic"]["display"], "q^3 - 2q^2 + q");

    let (_, _, code) = run(&["invariants", C4]);
    assert_eq!(code, 1);
}

#[test]
fn selftest_smoke() {
    let (stdout, _, code) = run(&["selftest", "--seed", "7", "--cases", "3"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    for i in 1..=9 {
        assert!(
            stdout.contains(&format!("criterion-{i}")),
            "missing suite {i} in output"
        );
    }
    assert!(stdout.contains("PASS"));
}

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = run(&["braid", "eq", "A[1,2]", "A[1,2]"]);
    assert_eq!(code, 2); // neither --strands nor --index
    let (_, _, code) = run(&["chordal", "{not json"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}
