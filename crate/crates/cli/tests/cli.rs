use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn loopforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopforge"))
        .args(args)
        .env_remove("LOOPFORGE_CATALOG")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn degree_three_finds_only_the_cyclic_group() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = write(
        dir.path(),
        "three.jsonl",
        concat!(
            r#"{"name":"C3","degree":3,"generators":["(1,2,3)"]}"#,
            "\n",
            r#"{"name":"S3","degree":3,"generators":["(1,2,3)","(1,2)"]}"#,
            "\n"
        ),
    );
    let out_dir = dir.path().join("out");
    let out = loopforge(&[
        "search",
        "--degree",
        "3",
        "--mode",
        "ra",
        "--iso-filter",
        "--catalog",
        catalog.to_str().unwrap(),
        "--output",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let index = read_json(&out_dir.join("loops/index.json"));
    let entries = index.as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert_eq!(e["associative"], true);
        let table = read_json(&out_dir.join(e["file"].as_str().unwrap()));
        assert_eq!(table["table"], serde_json::json!([[1, 2, 3], [2, 3, 1], [3, 1, 2]]));
    }
    let report = read_json(&out_dir.join("report.json"));
    assert_eq!(report["degrees"][0]["found"], 0);
}

#[test]
fn invalid_configurations_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    let bad_catalog = write(dir.path(), "bad.jsonl", r#"{"name":"x","degree":3,"generators":["(1,5)"]}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["search", "--degree", "1", "-o", out],
        vec!["search", "--degree", "15", "--mode", "xyz", "-o", out],
        vec!["search", "--degree", "abc", "-o", out],
        vec!["search", "--degree", "15", "--coset-limit", "0", "-o", out],
        vec!["search", "--degree", "15", "--jobs", "0", "-o", out],
        vec!["search", "--degree", "15", "--catalog", "/nonexistent/catalog.jsonl", "-o", out],
        vec!["search", "--degree", "3", "--catalog", bad_catalog.to_str().unwrap(), "-o", out],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        assert_eq!(code(&loopforge(&args)), 1, "{args:?}");
    }
}

#[test]
fn resource_limits_exit_with_two_and_still_write_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let result = loopforge(&["search", "--degree", "60", "--clique-limit", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&result), 2);
    let report = read_json(&out.join("report.json"));
    let skipped = &report["degrees"][0]["skipped"]["resource"];
    assert!(skipped.as_u64().unwrap() >= 1);
}

#[test]
fn check_reports_properties() {
    let dir = tempfile::tempdir().unwrap();
    let klein = write(
        dir.path(),
        "klein.json",
        r#"{"order":4,"table":[[1,2,3,4],[2,1,4,3],[3,4,1,2],[4,3,2,1]]}"#,
    );
    let out = loopforge(&["check", klein.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["commutative"], true);
    assert_eq!(report["associative"], true);
    assert_eq!(report["exponent"], 2);
    assert_eq!(report["simple_by_primitivity"], false);
    assert_eq!(report["simple_by_normal_closure"], false);

    let bad = write(dir.path(), "bad.json", r#"{"order":2,"table":[[1,2],[2,2]]}"#);
    assert_eq!(code(&loopforge(&["check", bad.to_str().unwrap()])), 1);
    let garbage = write(dir.path(), "garbage.json", "not json");
    assert_eq!(code(&loopforge(&["check", garbage.to_str().unwrap()])), 1);
}

#[test]
fn found_order_15_loop_checks_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert_eq!(code(&loopforge(&["search", "-d", "15", "--iso-filter", "-o", out.to_str().unwrap()])), 0);
    let rep = out.join("representatives/15-1.json");
    let result = loopforge(&["check", rep.to_str().unwrap()]);
    let report: Value = serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(report["right_automorphic"], true);
    assert_eq!(report["simple_by_primitivity"], true);
    assert_eq!(report["simple_by_normal_closure"], true);
    assert_eq!(report["associative"], false);
}

#[test]
fn verify_reformulation_reports_every_condition() {
    let dir = tempfile::tempdir().unwrap();
    let c8: String = {
        let rows: Vec<Vec<usize>> = (0..8).map(|i| (0..8).map(|j| (i + j) % 8 + 1).collect()).collect();
        serde_json::json!({"order": 8, "table": rows}).to_string()
    };
    let c8 = write(dir.path(), "c8.json", &c8);
    let out = loopforge(&["verify-reformulation", "generated", c8.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["conditions"]["a_primitive_power_of_two"], false);
    assert_eq!(report["conditions"]["d_commutators_in_stabilizer"], true);
    assert_eq!(report["all_hold"], false);

    // two elements sending 1 to 2: not a transversal
    let bad = write(dir.path(), "bad.json", r#"["()", "(1,2)", "(1,2)(3,4)", "(1,4)"]"#);
    let group = write(dir.path(), "s4.json", r#"{"degree":4,"generators":["(1,2,3,4)","(1,2)"]}"#);
    let arg = format!("@{}", group.display());
    let out = loopforge(&["verify-reformulation", &arg, bad.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["conditions"]["b_right_transversal"], false);
    assert!(report["conditions"]["f_squares_in_stabilizer"].is_boolean());

    let unparseable = write(dir.path(), "u.json", r#"["(1,2"]"#);
    assert_eq!(code(&loopforge(&["verify-reformulation", &arg, unparseable.to_str().unwrap()])), 1);
    assert_eq!(code(&loopforge(&["verify-reformulation", "999/1", c8.to_str().unwrap()])), 1);
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for jobs in ["1", "4"] {
        let out = dir.path().join(format!("out{jobs}"));
        let result = loopforge(&["search", "-d", "27", "--iso-filter", "-j", jobs, "-o", out.to_str().unwrap()]);
        assert_eq!(code(&result), 0);
        reports.push((
            fs::read(out.join("report.json")).unwrap(),
            fs::read(out.join("loops/index.json")).unwrap(),
            result.stdout,
        ));
    }
    assert!(reports[0] == reports[1]);
}
