use rigid4::construct::MonodromyTriple;
use rigid4::group::GroupReport;
use rigid4::ode::OdeCoefficients;
use rigid4::search::SearchHit;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigid4")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SPECTRA: [&str; 6] = ["--alpha", "1/3,2/3", "--beta", "0,1/2", "--gamma", "1/5,2/5,3/5,4/5"];

fn with_spectra<'a>(cmd: &'a [&'a str]) -> Vec<&'a str> {
    cmd.iter().copied().chain(SPECTRA).collect()
}

#[test]
fn help_and_usage_errors() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Usage"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["group", "--alpha", "1/3,2/3", "--wrong", "1"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["irreducible", "--alpha", "1/3,2/3", "--beta", "0,1/2", "--gamma", "1/5,2/5,3/5,5/4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["rigid", "--diagram", "GXII"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rigidity_traces() {
    let o = run(&["rigid", "--diagram", "GII"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.trim_end().lines().last(), Some("rigid"));
    assert!(text.contains("(1)"));
    let o = run(&["rigid", "--diagram", "GIV"]);
    assert!(stdout(&o).contains("central 2 vs neighbor 3"));
    assert_eq!(stdout(&o).trim_end().lines().last(), Some("not rigid"));
}

#[test]
fn json_round_trips() {
    let o = run(&with_spectra(&["construct"]));
    let t: MonodromyTriple = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(t.product_is_identity().unwrap());
    let o = run(&with_spectra(&["group"]));
    let g: GroupReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((g.order, g.center), (60, 1));
    let o = run(&["ode", "--alpha", "1/4,3/4", "--gamma", "1/5,2/5,3/5,-1/5", "--terms", "6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c: OdeCoefficients = serde_json::from_value(v["coefficients"].clone()).unwrap();
    assert_eq!(c.constants[7].to_string(), "-6/625");
    assert_eq!(v["phi0"][5], "57582020413/67659667968750");
}

#[test]
fn indicial_reads_ode_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.json");
    let o = run(&["ode", "--alpha", "1/4,3/4", "--gamma", "1/5,2/5,3/5,-1/5"]);
    std::fs::write(&path, stdout(&o)).unwrap();
    let o = run(&["indicial", "--op", path.to_str().unwrap(), "--at", "inf"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["roots"], serde_json::json!(["-1/5", "1/5", "2/5", "3/5"]));
    let o = run(&["indicial", "--op", path.to_str().unwrap(), "--at", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn hermitian_and_obstruction() {
    let o = run(&with_spectra(&["hermitian", "--all-twists"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "positive");
    assert_eq!(v["arcs_definite"], true);
    assert_eq!(v["finite"], true);
    let o = run(&with_spectra(&["obstruction"]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["D"], -3);
    assert_eq!(v["mu"], 1);
}

#[test]
fn searches() {
    let o = run(&["search", "moduli-q", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 57);
    assert!(lines[0].starts_with("alpha1,alpha2,beta1,beta2,gamma1"));
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/../../repro/golden/moduli_q.csv");
    assert_eq!(text, std::fs::read_to_string(golden).unwrap());
    let args = ["search", "finite", "--max-abd", "4", "--max-gd", "12"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&[&args[..], &["--jobs", "2"]].concat()));
    assert_eq!(a, b);
    let hits: Vec<SearchHit> = serde_json::from_str(&a).unwrap();
    assert!(!hits.is_empty() && hits.iter().all(|h| h.finite));
}

#[test]
fn verify_identity() {
    let o = run(&["verify", "--identity", "degree5", "--terms", "12"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["holds"], true);
}
