use std::process::Command;

use freeprob::Scalar;
use freeprob_cli::{run, TableOut};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("freeprob").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tables(args: &[&str]) -> Vec<TableOut> {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = call(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn scalar(s: &str) -> Scalar {
    s.parse().unwrap()
}

#[test]
fn moments_table() {
    let t = tables(&["moments", "--order", "3", "--t", "1"]);
    assert_eq!(t.len(), 1);
    let rows = &t[0].entries;
    assert_eq!(rows.iter().map(|e| e.n).collect::<Vec<_>>(), [1, 2, 3]);
    assert_eq!(scalar(&rows[0].symbolic), scalar("Q"));
    assert_eq!(scalar(&rows[1].symbolic), scalar("Q^2*(1 - t)"));
    assert_eq!(scalar(&rows[2].symbolic), scalar("Q^3*(1 - 3*t + 3*t^2/2)"));
    assert_eq!(rows[1].numeric["t=1"], "0");
    assert!(rows[0].numeric["t=1"].as_str().unwrap().starts_with("0.60653065971263342360"));
}

#[test]
fn schur_gamma_one() {
    let t = tables(&["schur", "--depth", "1", "--t", "1", "--order", "2"]);
    let gamma = t.iter().find(|x| x.table == "gamma").unwrap();
    let g1 = &gamma.entries[1];
    assert_eq!(g1.symbolic, "-t*Q^2/(1 - Q^2)");
    assert!(g1.numeric["t=1"].as_str().unwrap().starts_with("-0.581976"));
    let f1 = t.iter().find(|x| x.table == "f1[one-minus-exp-t]").unwrap();
    assert!(f1.errata[0].as_printed_holds);
}

#[test]
fn variant_filters() {
    let t = tables(&["jacobi-r", "--order", "3", "--variant", "corrected"]);
    let labels: Vec<&str> = t.iter().map(|x| x.table.as_str()).collect();
    assert_eq!(labels, ["b", "b[corrected]"]);
    assert!(!t[0].errata.is_empty());
    let t = tables(&["jacobi-s", "--order", "3"]);
    let labels: Vec<&str> = t.iter().map(|x| x.table.as_str()).collect();
    assert_eq!(labels, ["c", "c[as-printed]", "c[cauchy]", "c[corrected]", "S"]);
    assert_eq!(t[0].entries, t[3].entries.iter().cloned().collect::<Vec<_>>());
    let (code, _, err) = call(&["jacobi-r", "--variant", "bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown variant"));
}

#[test]
fn star_and_cumulant_tables() {
    let t = tables(&["star-cumulants", "--order", "3"]);
    let labels: Vec<&str> = t.iter().map(|x| x.table.as_str()).collect();
    assert_eq!(labels, ["g", "h", "a", "a"]);
    assert_eq!(t[2].entries, t[3].entries);
    let closed = tables(&["free-cumulants", "--order", "5", "--variant", "closed-form"]);
    let oracle = tables(&["free-cumulants", "--order", "5", "--variant", "oracle"]);
    assert_eq!(closed[0].entries, oracle[0].entries);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let (code, out, _) = call(&["jacobi-r", "--order", "4", "--t", "1/2", "--t", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let parsed: Vec<TableOut> = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, out);
    let keys: Vec<&String> = parsed[0].entries[0].numeric.keys().collect();
    assert_eq!(keys, ["t=1/2", "t=3"]);
}

#[test]
fn csv_layout() {
    let (code, out, _) = call(&["moments", "--order", "2", "--t", "1", "--t", "0.5", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# moments");
    assert_eq!(lines[1], "n,symbolic,t=1,t=1/2");
    assert!(lines[2].starts_with("1,Q,0.6065306597"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let (code, a, _) = call(&["verify", "--order", "6", "--format", "json"]);
    assert_eq!(code, 0, "{a}");
    let (_, b, _) = call(&["verify", "--order", "6", "--format", "json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
    let (code, pretty, _) = call(&["verify", "--order", "4"]);
    assert_eq!(code, 0);
    assert!(pretty.lines().last().unwrap().contains(" 0 failed"));
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["moments", "--order", "0"]).0, 2);
    assert_eq!(call(&["moments", "--t", "-1"]).0, 2);
    assert_eq!(call(&["moments", "--precision", "32"]).0, 2);
    assert_eq!(call(&["moments", "--depth", "2"]).0, 2);
    assert_eq!(call(&["schur", "--depth", "9"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    let (code, out, _) = call(&["moments", "--order", "99", "--format", "json"]);
    assert_eq!(code, 2);
    let rec: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rec["error"]["kind"], "usage");
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn binary_exit_codes_and_env_cap() {
    let bin = env!("CARGO_BIN_EXE_freeprob");
    let ok = Command::new(bin).args(["moments", "--order", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("(1 - t)*Q^2"));
    let capped = Command::new(bin).args(["moments", "--order", "3"]).env("FREEPROB_MAX_ORDER", "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let bad = Command::new(bin).args(["moments", "--format", "xml"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
