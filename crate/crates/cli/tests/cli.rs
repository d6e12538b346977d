//! End-to-end tests of the weilq binary: exit codes, output formats, file
//! output, and byte determinism across thread counts.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

use weilq_cli::report::Report;

fn weilq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilq")).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn spec_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const PASSING_SPEC: &str = r#"{
    "q": 3,
    "tori": {"T": {"family": "norm_one_constant", "n": 2}},
    "commands": [{"target": "T", "op": "verify_ono"}]
}"#;

#[test]
fn passing_verification_exits_zero_with_json_report() {
    let f = spec_file(PASSING_SPEC);
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Report = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report.q, 3);
    assert_eq!(report.results[0].verdict.as_deref(), Some("pass"));
    assert_eq!(report.results[0].outputs["tau_ono"], "2");
}

#[test]
fn failing_verification_exits_one() {
    // true class data for this biquadratic norm-one torus is (4, 1, 2);
    // the supplied tuple is wrong, so the leading-value identity must fail
    let f = spec_file(
        r#"{
            "q": 5,
            "covers": {"K": {"kummer": [{"m": 2, "f": "t"}, {"m": 2, "f": "t-1"}]}},
            "tori": {"N": {"family": "norm_one", "cover": "K",
                           "class_data": {"cl_tor": 1, "disc": 1, "units": 2}}},
            "commands": [{"target": "N", "op": "verify_theorem"}]
        }"#,
    );
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Report = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report.results[0].verdict.as_deref(), Some("fail"));
    assert!(report.results[0].outputs["reason"].as_str().unwrap().contains("leading value"));
}

#[test]
fn correct_supplied_class_data_passes() {
    let f = spec_file(
        r#"{
            "q": 5,
            "covers": {"K": {"kummer": [{"m": 2, "f": "t"}, {"m": 2, "f": "t-1"}]}},
            "tori": {"N": {"family": "norm_one", "cover": "K",
                           "class_data": {"cl_tor": 4, "disc": 1, "units": 2}}},
            "commands": [{"target": "N", "op": "verify_theorem"}]
        }"#,
    );
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn invalid_field_size_exits_two() {
    let f = spec_file(r#"{"q": 6}"#);
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime power"));
}

#[test]
fn malformed_json_exits_two() {
    let f = spec_file("{ not json");
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_command_target_exits_two() {
    let f = spec_file(r#"{"q": 3, "commands": [{"target": "ghost", "op": "lfun"}]}"#);
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ghost"));
}

#[test]
fn unknown_flags_exit_two() {
    let out = weilq(&["verify", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ono_table_csv_bytes_are_exact() {
    let out = weilq(&["ono-table", "--qs", "2,3", "--ns", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "q,n,tau_ono,tau_modern,verdict\n2,2,2,2,pass\n3,2,2,2,pass\n");
}

#[test]
fn csv_is_refused_outside_tamagawa_tables() {
    let f = spec_file(
        r#"{
            "q": 3,
            "tori": {"T": {"family": "split", "d": 1}},
            "commands": [{"target": "T", "op": "lfun"}]
        }"#,
    );
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let f = spec_file(PASSING_SPEC);
    let target = NamedTempFile::new().unwrap();
    let out = weilq(&[
        "verify",
        "--spec",
        f.path().to_str().unwrap(),
        "--format",
        "json",
        "--out",
        target.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).is_empty());
    let written = std::fs::read_to_string(target.path()).unwrap();
    let report: Report = serde_json::from_str(&written).unwrap();
    assert_eq!(report.results.len(), 1);
}

#[test]
fn thread_count_never_changes_the_bytes() {
    let mut outputs = Vec::new();
    for threads in ["1", "8"] {
        let out = weilq(&["ono-table", "--qs", "2,3", "--ns", "2,3", "--threads", threads, "--format", "json"]);
        assert!(out.status.success());
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn places_counts_include_infinity_at_degree_one() {
    let out = weilq(&["places", "--q", "2", "--max-deg", "3", "--format", "json"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_str(&stdout_of(&out)).unwrap();
    let by_degree = report.results[0].outputs["by_degree"].as_array().unwrap();
    let counts: Vec<u64> = by_degree.iter().map(|e| e["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![3, 1, 2]);
}

#[test]
fn single_object_subcommands_run_without_a_command_list() {
    let f = spec_file(
        r#"{
            "q": 3,
            "covers": {"E": {"kummer": [{"m": 2, "f": "t^3 - t"}]}},
            "motives": {"M": {"x_rank": 2, "torus_rank": 1, "map": [["t"], ["t - 1"]]}}
        }"#,
    );
    let path = f.path().to_str().unwrap();
    let zeta = weilq(&["zeta-cover", "--spec", path, "--name", "E", "--format", "json"]);
    assert!(zeta.status.success());
    let report: Report = serde_json::from_str(&stdout_of(&zeta)).unwrap();
    assert_eq!(report.results[0].outputs["numerator_u"], serde_json::json!(["1", "0", "3"]));

    let motive = weilq(&["motive", "--spec", path, "--name", "M", "--format", "json"]);
    assert!(motive.status.success());
    let report: Report = serde_json::from_str(&stdout_of(&motive)).unwrap();
    assert_eq!(report.results[0].outputs["lhs"], "3/8");
    assert_eq!(report.results[0].verdict.as_deref(), Some("pass"));

    let missing = weilq(&["torus", "--spec", path, "--name", "nope"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn text_format_prints_a_summary_line() {
    let f = spec_file(PASSING_SPEC);
    let out = weilq(&["verify", "--spec", f.path().to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.contains("PASS  T verify_ono"));
    assert!(text.contains("1 passed, 0 failed, 0 errors, 1 commands"));
}
