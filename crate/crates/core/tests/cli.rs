use std::process::Command;

use hilbert_k::cli::canonical_json;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hilbert-k")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = run(&full);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    serde_json::from_str(&stdout).unwrap()
}

fn rank_column(v: &Value) -> Vec<i64> {
    v["result"]["rows"].as_array().unwrap().iter().map(|r| r["rank_diff"].as_i64().unwrap()).collect()
}

#[test]
fn field_reports() {
    let v = run_json(&["field", "5"]);
    assert_eq!(v["result"]["trace_candidates"].as_array().unwrap().len(), 7);
    assert_eq!(v["result"]["allowed_orders"], serde_json::json!([2, 3, 5]));
    assert_eq!(run_json(&["field", "2"])["result"]["allowed_orders"], serde_json::json!([2, 3, 4]));

    let (code, _, stderr) = run(&["field", "12"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not square-free"));
}

#[test]
fn exact_strings_unless_approx() {
    let (_, plain, _) = run(&["field", "5"]);
    assert!(plain.contains("1/2 + 1/2*sqrt(5)"));
    assert!(!plain.contains("approx"));
    let (_, approx, _) = run(&["--approx", "field", "5"]);
    assert!(approx.contains("approx"));
    let v = run_json(&["--approx", "field", "5"]);
    assert!(v["result"]["trace_candidates"][0]["approx"]["sigma1"].is_f64());
}

#[test]
fn rank_rows() {
    // The q = 5 row is sum(r) - m = 14 - 6.
    let field = run_json(&["ranks", "5", "--q", "5,7,1,2"]);
    assert_eq!(rank_column(&field), [8, 6, 2, 0]);
    let generic = run_json(&["ranks", "--classes", "2:2,3:2,5:2", "--q", "5,7,1,2"]);
    assert_eq!(rank_column(&generic), rank_column(&field));
    assert_eq!(field["provenance"]["class_counts"], "paper-table");
    assert_eq!(generic["provenance"]["class_counts"], "user-input");

    let neg = run_json(&["ranks", "5", "--q", "-1,0,-3"]);
    assert_eq!(rank_column(&neg), [0, 0, 0]);
}

#[test]
fn missing_class_data_exits_3() {
    let (code, _, stderr) = run(&["ranks", "7", "--q", "1"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("--classes"));
    let (code, stdout, _) = run(&["ranks", "7", "--classes", "2:2,3:2", "--q", "1"]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn whitehead_examples() {
    assert_eq!(run(&["whitehead", "5", "--mode", "psl", "--q", "1"]).1, "Z^2\n");
    assert_eq!(run(&["whitehead", "5", "--mode", "sl", "--q", "1"]).1, "Z^2 + Z/2\n");
    let generic = ["whitehead", "--classes", "2:1,3:1", "--mode", "sl", "--q", "1", "--ab", "Z/6"];
    assert_eq!(run(&generic).1, "Z/6 + Z/2\n");
    assert_eq!(run(&["whitehead", "5", "--q", "-1"]).0, 0);
}

#[test]
fn missing_abelianization_exits_4() {
    let (code, _, stderr) = run(&["whitehead", "--classes", "2:1,3:1", "--mode", "sl", "--q", "1"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("--ab"));
    // counts that differ from the built-in table do not inherit its abelianization
    let (code, _, _) = run(&["whitehead", "5", "--classes", "2:1,3:2,5:2", "--mode", "sl", "--q", "1"]);
    assert_eq!(code, 4);
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["bogus"][..],
        &["ranks", "--classes", "3:2,2:2"],
        &["ranks", "--classes", "2:2,2:1"],
        &["ranks", "--classes", "2:0"],
        &["whitehead", "2", "--classes", "2:1,5:1"],
        &["classnum", "5"],
        &["classnum", "-5"],
        &["field", "1"],
    ] {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
    }
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn small_commands() {
    assert_eq!(run(&["reps", "5"]).1, "r=3 c=2 q=2 k_5=2 r_5=1\n");
    assert!(run(&["chains", "--poset", "psl", "--m", "6", "--p", "2"]).1.starts_with("0 2-chains"));
    assert!(run(&["classnum", "-23"]).1.contains("= 3"));

    let v = run_json(&["chains", "--poset", "sl", "--m", "3", "--p", "2"]);
    assert_eq!(v["result"]["count"], 3);
    assert_eq!(run_json(&["classnum", "-23"])["result"]["class_number"], 3);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["--json", "field", "5"][..],
        &["--json", "--approx", "field", "13"],
        &["--json", "ranks", "5"],
        &["--json", "whitehead", "5", "--mode", "sl", "--q", "1"],
        &["--json", "reps", "12"],
        &["--json", "classnum", "-23"],
        &["--json", "chains", "--poset", "sl", "--m", "2", "--p", "1"],
    ] {
        let (code, stdout, _) = run(args);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert!(v["provenance"].is_object());
        assert_eq!(canonical_json(&v), stdout, "{args:?}");
    }
}
