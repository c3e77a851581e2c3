use std::process::{Command, Output};

use linmon_core::AnalysisReport;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn linmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linmon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LINEAR: [&str; 4] = [
    "two_sandwiches.txt",
    "free_monogenic.txt",
    "monogenic_plus_finite.txt",
    "collapse.txt",
];

#[test]
fn exit_codes() {
    let cases = [
        ("two_sandwiches.txt", 0),
        ("commutative.txt", 0),
        ("weighted.txt", 0),
        ("syntax_error.txt", 1),
        ("missing.txt", 1),
        ("not_homogeneous.txt", 2),
        ("braid.txt", 3),
    ];
    for (file, code) in cases {
        let o = linmon(&["analyze", &fixture(file)]);
        assert_eq!(o.status.code(), Some(code), "{file}");
    }
    let o = linmon(&["check", &fixture("not_homogeneous.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let o = linmon(&["complete", &fixture("collapse.txt"), "--completion-degree", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("truncated at degree 2"));
    let o = linmon(&["analyze", &fixture("two_sandwiches.txt"), "--seed-order", "x,z"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn golden_report() {
    let o = linmon(&["analyze", &fixture("two_sandwiches.txt"), "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["growth"], "polynomial:1");
    assert_eq!(v["decomposition"]["sandwiches"].as_array().unwrap().len(), 2);
    assert_eq!(
        v["decomposition"]["gamma"],
        serde_json::json!({"lower": 2, "upper": 2, "exact": true})
    );
    assert_eq!(v["series"]["text"], "(1 + t)/(1 - t)");

    let o = linmon(&["decompose", &fixture("free_monogenic.txt"), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sandwiches"], serde_json::json!([{"a": "", "w": "x", "b": ""}]));
    assert_eq!(v["gamma"]["upper"], 1);
}

#[test]
fn not_linear_is_a_diagnostic() {
    let o = linmon(&["analyze", &fixture("commutative.txt"), "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["growth"], "polynomial:2");
    assert!(v["decomposition"].is_null());
    assert!(v["diagnostics"][0].as_str().unwrap().starts_with("not linear"));
    let o = linmon(&["decompose", &fixture("commutative.txt")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("not linear"));
}

#[test]
fn json_round_trips_and_is_stable() {
    for file in LINEAR.iter().chain(&["commutative.txt", "braid.txt"]) {
        let args = ["analyze", &fixture(file), "--format", "json", "--max-degree", "8"];
        let first = stdout(&linmon(&args));
        let report = AnalysisReport::from_json(&first).unwrap();
        assert_eq!(report.to_json() + "\n", first, "{file}");
        assert_eq!(stdout(&linmon(&args)), first, "{file}");
    }
}

#[test]
fn oracle_agrees_with_growth_counts() {
    for file in LINEAR
        .iter()
        .chain(&["commutative.txt", "weighted.txt"])
    {
        let growth: Value = serde_json::from_str(&stdout(&linmon(&[
            "growth",
            &fixture(file),
            "--format",
            "json",
        ])))
        .unwrap();
        let oracle: Value = serde_json::from_str(&stdout(&linmon(&[
            "oracle",
            &fixture(file),
            "--format",
            "json",
        ])))
        .unwrap();
        assert_eq!(growth["counts"], oracle["counts"], "{file}");
        assert_eq!(growth["counts"].as_array().unwrap().len(), 13);
    }
}

#[test]
fn generator_order_does_not_change_counts() {
    for file in ["two_sandwiches.txt", "monogenic_plus_finite.txt", "commutative.txt"] {
        let run = |order: &str| -> Value {
            let o = linmon(&[
                "analyze",
                &fixture(file),
                "--format",
                "json",
                "--seed-order",
                order,
            ]);
            serde_json::from_str(&stdout(&o)).unwrap()
        };
        let (a, b) = (run("x,y"), run("y,x"));
        assert_eq!(a["counts"], b["counts"], "{file}");
        assert_eq!(a["growth"], b["growth"], "{file}");
        assert_eq!(a["series"]["text"], b["series"]["text"], "{file}");
        assert_eq!(
            a["decomposition"]["gamma"], b["decomposition"]["gamma"],
            "{file}"
        );
    }
}

#[test]
fn automaton_to_file_and_stdin_input() {
    let dir = std::env::temp_dir().join(format!("linmon-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("m.dot");
    let o = linmon(&[
        "automaton",
        &fixture("two_sandwiches.txt"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot, stdout(&linmon(&["automaton", &fixture("two_sandwiches.txt")])));
    std::fs::remove_dir_all(&dir).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_linmon"))
        .args(["series", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"gens: x y\nrels: xy = yx\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o).trim(), "1/(1 - t)^2");
}

#[test]
fn gamma_and_monogenic_output() {
    let o = linmon(&["gamma", &fixture("monogenic_plus_finite.txt"), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["upper"], 1);
    assert_eq!(v["monogenic"]["result"], "witness");
    assert_eq!(v["monogenic"]["generator"], "x");
    assert_eq!(v["monogenic"]["residual"], serde_json::json!(["y"]));
    let text = stdout(&linmon(&["gamma", &fixture("two_sandwiches.txt")]));
    assert_eq!(text, "gamma: 2 (exact)\n");
}
