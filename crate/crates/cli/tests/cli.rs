use std::process::Command;

use serde_json::Value;
use steinberg_cli::{run, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("steinberg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rows(csv_text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(csv_text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn dim_examples() {
    for (k, q, d) in [("4", "5", "1"), ("0", "2", "0"), ("7", "3", "0"), ("2", "2", "1")] {
        let (code, out, _) = call(&["dim", k, q, "--oracle"]);
        assert_eq!(code, EXIT_OK);
        let r = &rows(&out)[0];
        assert_eq!((r[3].as_str(), r[5].as_str(), r[6].as_str()), (d, d, "true"), "k={k} q={q}");
    }
}

#[test]
fn dim_accepts_huge_k() {
    let k = "1".repeat(60);
    let (code, out, _) = call(&["dim", &k, "3"]);
    assert_eq!(code, EXIT_OK);
    let r = &rows(&out)[0];
    assert_eq!(r[3], r[4]);
    assert!(r[5].is_empty(), "oracle only runs when asked");
}

#[test]
fn table_csv_header_and_values() {
    let (code, out, _) = call(&["table", "--q", "5", "--kmax", "8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next().unwrap(), "k,q,dim_Lk,d_general,d_closed,d_oracle,agree");
    let r = rows(&out);
    assert_eq!(r.len(), 9);
    let d: Vec<&str> = r.iter().map(|row| row[3].as_str()).collect();
    assert_eq!(&d[..5], &["0", "0", "0", "0", "1"]);
}

#[test]
fn table_json_keys_in_order() {
    let (code, out, _) = call(&["table", "--q", "3", "--kmax", "4", "--format", "json", "--oracle"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let first = v.as_array().unwrap()[0].as_object().unwrap();
    let keys: Vec<&str> = first.keys().map(String::as_str).collect();
    assert_eq!(keys, ["k", "q", "dim_Lk", "d_general", "d_closed", "d_oracle", "agree"]);
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn timings_only_with_flag() {
    let (_, plain, _) = call(&["table", "--q", "2", "--kmax", "3"]);
    let (_, timed, _) = call(&["table", "--q", "2", "--kmax", "3", "--timings"]);
    assert!(!plain.lines().next().unwrap().contains("t_general_us"));
    assert!(timed.lines().next().unwrap().ends_with("t_general_us,t_closed_us,t_oracle_us"));
}

#[test]
fn output_independent_of_jobs() {
    let (_, one, _) = call(&["table", "--q", "7", "--kmax", "300", "--jobs", "1"]);
    let (_, four, _) = call(&["table", "--q", "7", "--kmax", "300", "--jobs", "4"]);
    assert_eq!(one, four);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["dim", "3", "6"][..],
        &["dim", "-1", "3"],
        &["table", "--q", "4"],
        &["nonsense"],
        &["table", "--q", "3", "--kmax", "2", "--jobs", "0"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("char-table"));
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("steinberg "));
}

#[test]
fn verify_reports_no_mismatches() {
    let (code, out, _) = call(&["verify", "--q", "4", "--kmax", "40", "--methods", "general,closed,oracle,inner-product"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mismatches: 0"));
}

#[test]
fn char_table_q2() {
    let (code, out, _) = call(&["char-table", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    let r = rows(&out);
    assert_eq!(r.len(), 4);
    let st_on_torus = r.iter().find(|row| row[1] == "nonsplit" && row[3] == "st").unwrap();
    assert_eq!(st_on_torus[5], "-1.000000000000");
}

#[test]
fn classes_audit_passes() {
    let (code, out, _) = call(&["classes", "--q", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("11 classes (expected 11), 7 p-regular"));
}

#[test]
fn asymptotics_rows_within_envelope() {
    let (code, out, _) = call(&["asymptotics", "--q", "4", "--schedule", "mass:5,10"]);
    assert_eq!(code, EXIT_OK);
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|row| row.last().unwrap() == "true"));
}

#[test]
fn out_writes_file() {
    let path = std::env::temp_dir().join(format!("steinberg-cli-{}.csv", std::process::id()));
    let (code, out, _) = call(&["dim", "4", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.contains("4,5,5,1,1,,true"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_steinberg");
    let ok = Command::new(bin).args(["dim", "10", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["dim", "10", "12"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
