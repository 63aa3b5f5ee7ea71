use std::path::Path;
use std::process::{Command, Output};

fn dimred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimred")).args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const RUNS: &[&[&str]] = &[
    &["enumerate", "--model", "line3", "--order", "6"],
    &["enumerate", "--model", "tri7", "--order", "5", "--strategy", "tree-walk"],
    &["enumerate", "--model", "fcc", "--order", "3", "--neighbors", "[[-1,0],[0,0],[1,0],[-2,0],[2,0]]"],
    &["gas", "--model", "hard-hexagons", "--order", "5"],
    &["gas", "--model", "dimer", "--order", "6"],
    &["gas", "--model", "hard-squares", "--order", "4", "--method", "occupancy"],
    &["continuum", "--shape", "ball", "--order", "3"],
    &["continuum", "--shape", "diamond", "--order", "4", "--method", "monte-carlo", "--samples", "200000", "--seed", "3"],
    &["forest-check", "--n", "3", "--family", "quadratic-exponential", "--seed", "5"],
    &["verify", "--pair", "line3:dimer", "--order", "8"],
    &["verify", "--pair", "diamond:hard-rods", "--order", "3"],
    &["exponents", "--model", "line3", "--order", "30", "--mu", "4"],
    &["exponents", "--model", "tri7", "--order", "12"],
];

#[test]
fn every_report_validates_against_the_schema() {
    let validator = schema();
    for args in RUNS {
        let out = dimred(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let doc = json(&out);
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let validator = schema();
    let mut doc = json(&dimred(RUNS[0]));
    doc["report"]["d"][0]["value"] = serde_json::json!(1.0);
    assert!(!validator.is_valid(&doc));
    let mut doc = json(&dimred(RUNS[0]));
    doc["config"]["subcommand"] = serde_json::json!("plot");
    assert!(!validator.is_valid(&doc));
}

#[test]
fn identical_runs_give_identical_bytes() {
    for args in RUNS {
        let a = dimred(args);
        let b = dimred(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn enumerate_line3_to_four() {
    let doc = json(&dimred(&["enumerate", "--model", "line3", "--order", "4"]));
    let d: Vec<&str> = doc["report"]["d"].as_array().unwrap().iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(d, ["1/1", "3/1", "10/1", "35/1"]);
    assert_eq!(doc["config"]["order"], 4);
    assert_eq!(doc["config"]["budget"]["enumeration"], 14);
}

#[test]
fn verify_dimers_exits_zero_with_all_rows_equal() {
    let out = dimred(&["verify", "--pair", "line3:dimer", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["report"]["pass"], true);
    assert!(doc["report"]["rows"].as_array().unwrap().iter().all(|r| r["equal"] == true));
}

#[test]
fn exit_codes() {
    let usage: &[&[&str]] = &[
        &["enumerate", "--model", "line3", "--order", "0"],
        &["enumerate", "--model", "hexagonal", "--order", "3"],
        &["enumerate", "--model", "square5", "--order", "13"],
        &["gas", "--model", "hard-hexagons", "--order", "15"],
        &["gas", "--model", "hard-rods", "--order", "4", "--method", "transfer-matrix"],
        &["continuum", "--shape", "cube", "--order", "2"],
        &["continuum", "--shape", "ball", "--order", "4"],
        &["forest-check", "--n", "4"],
        &["forest-check", "--n", "2", "--family", "gaussian"],
        &["verify", "--pair", "line3:hard-squares", "--order", "4"],
        &["exponents", "--model", "line3", "--order", "5"],
        &["enumerate", "--order", "3"],
        &["enumerate", "--model", "line3", "--order", "three"],
    ];
    for args in usage {
        let out = dimred(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} should explain itself");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    // a Monte Carlo run far off target is a tolerance failure, not a usage error
    let out = dimred(&["continuum", "--shape", "diamond", "--order", "5", "--method", "monte-carlo", "--samples", "1000"]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    // quadrature that cannot meet its tolerance
    let out = dimred(&["continuum", "--shape", "diamond", "--order", "3", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn over_budget_mentions_force_and_force_warns() {
    let out = dimred(&["enumerate", "--model", "tri7", "--order", "11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    let out = dimred(&["--force", "forest-check", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("warning:"));
    assert_eq!(json(&out)["config"]["budget"]["forest"], 6);
}

#[test]
fn csv_tables() {
    let out = dimred(&["enumerate", "--model", "line3", "--order", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,d_N,ratio,theta_N"));
    assert_eq!(lines.next(), Some("1,1/1,,"));
    assert!(lines.next().unwrap().starts_with("2,3/1,3.0000000000000000e0,"));

    let out = dimred(&["gas", "--model", "dimer", "--order", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "N,pressure,density\n0,0/1,0/1\n1,1/1,1/1\n2,-3/2,-3/1\n");

    let out = dimred(&["forest-check", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("roots,links,value\n"));
}

#[test]
fn output_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("dimred-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = dimred(&["gas", "--model", "hard-squares", "--order", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["report"]["method"], "transfer-matrix(W=5)");
    std::fs::remove_dir_all(dir).unwrap();
}
