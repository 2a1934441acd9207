use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbc")).args(args).env_remove("SBC_LEVEL_CAP").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parsed JSON output with the timing field removed.
fn record(args: &[&str]) -> Value {
    let out = sbc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["elapsed_ms"].is_number());
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

/// Compares against `tests/golden/<name>.json`; `SBC_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let got = record(args);
    if std::env::var_os("SBC_BLESS").is_some() {
        fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
        return;
    }
    let want: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(got, want, "{name}");
}

#[test]
fn golden_linear() {
    golden("linear_4_1", &["linear", "--n", "4", "--x", "1"]);
    golden("linear_8_0", &["linear", "--n", "8", "--x", "0", "--mode", "both"]);
    golden("linear_12_5", &["linear", "--n", "12", "--x", "5"]);
}

#[test]
fn golden_coeff() {
    golden("coeff_12_5", &["coeff", "--n", "12", "--x", "5", "--parts", "4,1", "--mode", "both"]);
}

#[test]
fn golden_restrict() {
    golden("restrict_4_0", &["restrict", "--n", "4", "--x", "0"]);
    golden("restrict_4_1", &["restrict", "--n", "4", "--x", "1", "--mode", "both"]);
    golden("restrict_8_2_profile", &["restrict", "--n", "8", "--x", "2", "--profile"]);
    golden("restrict_8_3_profile", &["restrict", "--n", "8", "--x", "3", "--profile"]);
}

#[test]
fn golden_thresholds() {
    golden("thresholds_8", &["thresholds", "--n", "8", "--mode", "both"]);
    golden("thresholds_12_3", &["thresholds", "--n", "12", "--k", "3"]);
    golden("thresholds_128", &["thresholds", "--n", "128"]);
}

#[test]
fn golden_hset() {
    golden("hset_8_2", &["hset", "--n", "8", "--k", "2", "--mode", "both"]);
}

#[test]
fn linear_bits() {
    let v = record(&["linear", "--n", "4", "--x", "1"]);
    assert_eq!(v["result"]["linear"], "(0,1)");
    let v = record(&["linear", "--n", "8", "--x", "0"]);
    assert_eq!(v["result"]["linear"], "(0,0,0)");
    assert_eq!(v["provenance"], "formula");
}

#[test]
fn linear_profile_is_binomial() {
    let v = record(&["linear", "--n", "12", "--x", "5", "--mode", "both"]);
    assert_eq!(v["provenance"], "both-agree");
    let rows = v["result"]["profile"].as_array().unwrap();
    assert_eq!(rows.len(), 32);
    for r in rows {
        let y = 5 - r["legs"].as_array().unwrap().iter().map(|l| l.as_i64().unwrap()).sum::<i64>();
        let want = u64::from(y == 0 || y == 1);
        assert_eq!(r["multiplicity"].as_u64().unwrap(), want);
    }
}

#[test]
fn conjugate_profiles_agree() {
    let a = record(&["restrict", "--n", "8", "--x", "2", "--profile"]);
    let b = record(&["restrict", "--n", "8", "--x", "5", "--profile"]);
    assert_eq!(a["result"]["profile"], b["result"]["profile"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["restrict", "--n", "16", "--x", "7"];
    assert_eq!(record(&args), record(&args));
}

#[test]
fn csv_and_pretty() {
    let out = sbc(&["thresholds", "--n", "8", "--format", "csv"]);
    assert_eq!(stdout(&out), "k,threshold,status,tau_sum,tau_match\n0,8,ok,,\n1,7,ok,,\n2,7,ok,7,true\n");
    let out = sbc(&["restrict", "--n", "4", "--x", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "label,degree,multiplicity\nE(X(0);1),1,1\n\"I(X(0),X(1))\",2,1\n");
    let out = sbc(&["restrict", "--n", "8", "--x", "2", "--profile", "--format", "pretty"]);
    let text = stdout(&out);
    assert!(text.starts_with("sbc restrict mode=oracle n=8 profile=true x=2 [oracle, "), "{text}");
    assert!(text.ends_with("degree  distinct  total\n------  --------  -----\n1       1         1\n2       2         2\n4       3         4\n"));
}

#[test]
fn verify_passes() {
    let v = record(&["verify", "--max-n", "8"]);
    assert_eq!(v["result"]["all_passed"], true);
    assert_eq!(v["result"]["suites"].as_array().unwrap().len(), 14);
    let v = record(&["verify", "--max-n", "16", "--suite", "linear,boxes"]);
    let suites = v["result"]["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    assert!(suites.iter().all(|s| s["passed"] == true && s["checked"].as_u64().unwrap() > 0));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["linear", "--n", "4", "--x", "4"][..],
        &["linear", "--n", "4"],
        &["restrict", "--n", "4", "--x", "1", "--mode", "formula"],
        &["restrict", "--n", "64", "--x", "1"],
        &["coeff", "--n", "12", "--x", "5", "--parts", "1"],
        &["thresholds", "--n", "8", "--k", "3"],
        &["verify", "--suite", "nope"],
        &["hset", "--n", "8", "--k", "1", "--mode", "bogus"],
        &["frobnicate"],
    ] {
        let out = sbc(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(sbc(&["--help"]).status.code(), Some(0));
}

#[test]
fn level_cap_from_environment() {
    let run = |cap: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_sbc")).args(args).env("SBC_LEVEL_CAP", cap).output().unwrap()
    };
    assert_eq!(run("6", &["linear", "--n", "4", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run("many", &["linear", "--n", "4", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run("3", &["restrict", "--n", "16", "--x", "1"]).status.code(), Some(1));
    let out = run("3", &["restrict", "--n", "8", "--x", "1"]);
    assert!(out.status.success());
    // with a lower cap the threshold recursion reaches its horizon sooner
    let out = run("2", &["thresholds", "--n", "16", "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("needs-oracle@2^3"));
}
