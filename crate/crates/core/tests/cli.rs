use ekq::bialg::{axb, book3, parse_bialgebra_json, sl2_standard};
use ekq::serial::SeriesRecord;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn ekq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekq")).args(args).arg("--quiet").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"].as_array().unwrap().iter().map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string())).collect()
}

#[test]
fn data_files_match_the_builtin_fixtures() {
    for (file, g) in [("axb.json", axb()), ("book3.json", book3()), ("sl2.json", sl2_standard())] {
        let parsed = parse_bialgebra_json(&std::fs::read_to_string(data(file)).unwrap()).unwrap();
        assert_eq!(parsed.bracket_table(), g.bracket_table(), "{file}");
        assert_eq!(parsed.cobracket_table(), g.cobracket_table(), "{file}");
    }
}

#[test]
fn check_lists_four_passing_families() {
    let out = ekq(&["check", &data("axb.json")]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = statuses(&report(&out)).into_iter().filter(|(_, s)| s == "pass").map(|(n, _)| n).collect();
    assert_eq!(names, ["antisymmetry", "jacobi", "co-jacobi", "cocycle"]);
}

#[test]
fn broken_bialgebra_fails_with_a_witness() {
    let out = ekq(&["check", &data("broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    let bad = v["checks"].as_array().unwrap().iter().find(|c| c["status"] == "fail").unwrap();
    assert_eq!(bad["name"], "antisymmetry");
    assert!(!bad["residual"].as_str().unwrap().is_empty());
}

#[test]
fn ax_plus_b_square_has_no_corrections() {
    let out = ekq(&["product", &data("axb.json"), "--x", "a2", "--y", "a2"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: SeriesRecord = serde_json::from_value(report(&out)["result"].clone()).unwrap();
    let s = rec.to_element_series().unwrap();
    assert_eq!(s.coeff(0), &ekq::kernel::Lin::basis(vec![1, 1]));
    assert!(s.coeff(1).is_empty() && s.coeff(2).is_empty());
}

#[test]
fn order_truncates_the_emitted_series() {
    let out = ekq(&["coproduct", &data("sl2.json"), "--x", "E", "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["result"]["coeffs"].as_array().unwrap().len(), 2);
}

#[test]
fn every_command_passes_on_sample_data() {
    let runs: Vec<Vec<String>> = vec![
        vec!["double".into(), data("book3.json")],
        vec!["rmatrix".into(), data("axb.json")],
        vec!["polarize".into(), data("axb.json")],
        vec!["quantize-r".into(), data("mat2.json"), "--r".into(), data("e12_e12.json")],
        vec!["quantize-qt".into(), data("sl2.json"), "--r".into(), data("sl2_r.json")],
        vec!["eval".into(), data("jacobi.txt"), data("sl2.json")],
        vec!["eval".into(), data("cybe.txt"), data("mat2_e12.json")],
        vec!["eval".into(), data("cybe.txt"), data("sl2_qt.json")],
        vec!["selftest".into(), "--criterion".into(), "5".into()],
    ];
    for args in runs {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let out = ekq(&refs);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(statuses(&report(&out)).iter().all(|(_, s)| s == "pass"), "{args:?}");
    }
}

#[test]
fn cybe_expression_vanishes_on_matrix_r() {
    let out = ekq(&["eval", &data("cybe.txt"), &data("mat2_e12.json")]);
    let v = report(&out);
    assert_eq!(v["result"]["arity"], serde_json::json!([0, 3]));
    assert!(v["result"]["tensor"]["entries"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes_distinguish_errors() {
    let (missing, axb, broken, sl2_r) = (data("does_not_exist.json"), data("axb.json"), data("broken.json"), data("sl2_r.json"));
    let tmp = std::env::temp_dir().join(format!("ekq-malformed-{}.json", std::process::id()));
    std::fs::write(&tmp, "{\"dim\": 2").unwrap();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["frobnicate"], 2),
        (vec!["selftest", "--criterion", "12"], 2),
        (vec!["check", tmp.to_str().unwrap()], 3),
        (vec!["check", &missing], 3),
        (vec!["product", &axb, "--x", "a9", "--y", "a1"], 4),
        (vec!["product", &axb, "--x", "a1", "--y", "a1", "--order", "4"], 5),
        (vec!["rmatrix", &broken], 6),
        (vec!["quantize-qt", &axb, "--r", &sl2_r], 6),
    ];
    for (args, code) in cases {
        assert_eq!(ekq(&args).status.code(), Some(code), "{args:?}");
    }
    std::fs::remove_file(tmp).unwrap();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["rmatrix", &data("book3.json")];
    let a = ekq(&args);
    let b = ekq(&args);
    assert_eq!(a.stdout, b.stdout);
    let other = ekq(&["rmatrix", &data("axb.json")]);
    assert_ne!(report(&a)["inputs_digest"], report(&other)["inputs_digest"]);
}

#[test]
fn output_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("ekq-report-{}.json", std::process::id()));
    let out = ekq(&["check", &data("axb.json"), "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "check");
    assert!(v.get("timing").is_none());
    std::fs::remove_file(path).unwrap();
}
