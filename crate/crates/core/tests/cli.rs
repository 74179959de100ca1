use std::process::{Command, Output};

use objcomb::incidence::{fdb_coproduct, TensorPoly};
use serde_json::Value;

fn objcomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_objcomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr_error(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_slice(&out.stderr).expect("json on stderr");
    assert!(doc["error"]["message"].is_string());
    doc
}

#[test]
fn fdb_coproduct_three_has_three_terms() {
    let doc = stdout_json(&objcomb(&["fdb-coproduct", "3"]));
    assert_eq!(doc.as_array().unwrap().len(), 3);
    assert_eq!(TensorPoly::from_json(&doc).unwrap(), fdb_coproduct(3).unwrap());
}

#[test]
fn transversals_of_the_top_partition_on_two_points() {
    let doc = stdout_json(&objcomb(&["transversals", "--sigma", "[[0,1]]"]));
    assert_eq!(doc["labelled"], 2);
    assert_eq!(doc["classes"], 2);
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 2);
}

#[test]
fn cycle_index_prints_the_computed_sum() {
    let out = objcomb(&["cycle-index", "pi", "3", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5x1^3 + 9x1x2 + 4x3\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["pleth-coproduct", "{1:1,2:1}"][..],
        &["duality-check", "--kind", "pleth", "--max-weight", "3", "--trials", "3"],
        &["bell", "5", "2", "--format", "csv"],
    ] {
        let a = objcomb(args);
        let b = objcomb(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("objcomb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bell.json");
    let out = objcomb(&["bell", "4", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, objcomb(&["bell", "4", "2"]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_tensor_has_header_and_rows() {
    let out = objcomb(&["fdb-coproduct", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("left-monomial,right-monomial,numerator,denominator"));
    assert_eq!(lines.count(), fdb_coproduct(4).unwrap().len());
}

#[test]
fn checks_pass_at_small_bounds() {
    let doc = stdout_json(&objcomb(&["segal-check", "--family", "ns", "--max-n", "4"]));
    assert_eq!(doc[0]["passed"], true);
    let doc = stdout_json(&objcomb(&["duality-check", "--max-n", "4", "--max-weight", "3", "--trials", "4"]));
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["passed"] == c["trials"]));
}

#[test]
fn errors_are_machine_readable() {
    let doc = stderr_error(&objcomb(&["fdb-coproduct", "12"]));
    assert_eq!(doc["error"]["kind"], "bound-exceeded");
    assert_eq!(doc["error"]["got"], 12);

    let doc = stderr_error(&objcomb(&["pleth-coproduct", "{2:1,"]));
    assert_eq!(doc["error"]["kind"], "parse");
    assert!(doc["error"]["position"].is_u64());

    let doc = stderr_error(&objcomb(&["transversals", "--sigma", "[[0,1],[1]]"]));
    assert_eq!(doc["error"]["kind"], "invalid-partition");

    let doc = stderr_error(&objcomb(&["cycle-index", "tree", "3"]));
    assert_eq!(doc["error"]["kind"], "parse");

    let doc = stderr_error(&objcomb(&["no-such-verb"]));
    assert_eq!(doc["error"]["kind"], "usage");

    let doc = stderr_error(&objcomb(&["report", "--format", "csv", "--max-n", "99"]));
    assert_eq!(doc["error"]["kind"], "bound-exceeded");
}
