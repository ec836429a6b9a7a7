use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reference_digits() {
    let o = run(&["reference", "--digits", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1.202056903");
    assert_eq!(stdout(&run(&["reference", "--digits", "1"])).trim(), "1");
    let d30 = stdout(&run(&["reference", "--digits", "30"]));
    let d50 = stdout(&run(&["reference", "--digits", "50"]));
    assert!(d50.starts_with(d30.trim()));
    assert_eq!(d30.trim().len(), 31);
    assert_eq!(run(&["reference", "--digits", "0"]).status.code(), Some(2));
}

#[test]
fn compute_json_schema() {
    let o = run(&["compute", "--method", "CLAUSEN_X6", "--order", "0", "--prec-bits", "128", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for k in ["method", "order", "prec_bits", "value", "error_estimate", "abs_error"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert!(v.get("terms").is_none());
    assert_eq!(v["order"], 0);

    let o = run(&["compute", "--method", "bbp", "--order", "1", "--format", "json", "--trace"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["abs_error"].as_str().unwrap().ends_with("e-8"));
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", "--method", "NOPE", "--order", "1"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--method", "TRI"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--method", "TRI", "--order", "2", "--prec-bits", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "NOT_AN_IDENTITY"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["table1", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));

    let o = run(&["verify", "LI3_HALF"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
    let o = run(&["verify", "--identity", "FUNC_EQ:x=1/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "corrected");
}

#[test]
fn verify_all_has_no_unexplained_failures() {
    let o = run(&["verify", "--all", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains(",FAIL,"));
    assert!(out.lines().any(|l| l.starts_with("BLOCK_SIX,explained")));
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "--method", "SIX", "--order", "3", "--trace", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let a = run(&["table1", "--format", "json"]);
    let b = run(&["table1", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert!(v.get("wall_times").is_none());
}

#[test]
fn table_markdown_explains_misses() {
    let o = run(&["table1", "--prec-bits", "256"]);
    let out = stdout(&o);
    assert!(out.contains("| n | CLAUSEN_X6 | FINAL | BBP |"));
    if out.contains("| NO |") {
        assert!(out.contains("FINAL is the three-series identity"));
    }
    assert_eq!(run(&["table1", "--prec-bits", "64"]).status.code(), Some(2));
}

#[test]
fn lists() {
    let m = stdout(&run(&["list", "methods"]));
    assert_eq!(m.lines().count(), 8);
    let i = stdout(&run(&["list", "identities"]));
    assert!(i.lines().any(|l| l == "BBP_LAST_TERM"));
}
