//! End-to-end runs of the `spex` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spex"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("spex-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_ng_five() {
    let out = spex(&["verify-ng", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "verify-ng");
    assert_eq!(v["seed"], 0);
    assert!((v["best_value"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert_eq!(v["conjecture_holds"], true);
    let mut labels: Vec<&str> = v["maximizers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["label"].as_str().unwrap())
        .collect();
    labels.sort();
    assert_eq!(
        labels,
        ["CS(5,1)", "CS(5,2)", "complement of CS(5,1)", "complement of CS(5,2)"]
    );
}

#[test]
fn verify_qspread_six() {
    let out = spex(&["verify-qspread", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let max = &v["maximizers"];
    assert!((max["value"].as_f64().unwrap() - 57f64.sqrt()).abs() < 1e-9);
    assert_eq!(max["graphs"].as_array().unwrap().len(), 1);
    assert_eq!(max["graphs"][0]["label"], "K5+");
    assert_eq!(v["minimizers"]["graphs"][0]["label"], "P6");
}

#[test]
fn bound_table_csv() {
    let out = spex(&["bound-table", "--n-min", "3", "--n-max", "9", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["n", "residue", "bound", "omega_star", "p_cs", "gap"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| &r[5] == "0"));
    assert_eq!(&rows[2][3], "1;2");
}

#[test]
fn usage_errors_exit_two_without_stdout() {
    for args in [
        &["verify-ng", "--n", "99"][..],
        &["verify-ng", "--n", "5", "--unknown"],
        &["frobnicate"],
        &["search-local", "--mode", "ng", "--n", "100"],
        &["diag", "--graph", "/definitely/missing.g6"],
    ] {
        let out = spex(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = spex(&["verify-ng", "--n", "99"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(spex(&["--help"]).status.code(), Some(0));
}

#[test]
fn seeded_search_is_deterministic() {
    let args = ["search-local", "--mode", "ng", "--n", "9", "--starts", "4", "--seed", "11"];
    let a = spex(&args);
    let b = spex(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 11);
    assert_eq!(v["runs"][0]["seed"], 11);
    assert_eq!(v["bound_violations"], 0);
}

#[test]
fn exhaustive_report_independent_of_workers() {
    let a = spex(&["verify-ng", "--n", "6", "--jobs", "1"]);
    let b = spex(&["verify-ng", "--n", "6", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn graphon_checks() {
    let out = spex(&["graphon-check", "theorem34"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["matches"], true);

    let out = spex(&["graphon-check", "relation", "--n", "10", "--samples", "5", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("n,mu,n_mu,lambda1,gap"));
    assert_eq!(text.lines().count(), 2 + 5);

    let k2 = temp_file("k2.json", r#"{"n": 2, "edges": [[0, 1]]}"#);
    let half = temp_file("half.json", r#"{"m": [1.0], "values": [[0.5]]}"#);
    let out = spex(&["graphon-check", "cutnorm", k2.to_str().unwrap(), half.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["cut_norm"]["value"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    assert_eq!(v["cut_norm"]["exact"], true);
}

#[test]
fn diag_reads_graph6() {
    // K5 with a pendant vertex
    let g = temp_file("k5p.g6", "E~}?\n");
    let out = spex(&["diag", "--graph", g.to_str().unwrap(), "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let d = &v["diagnostics"];
    assert_eq!(d["n"], 6);
    assert_eq!(d["edges"], 11);
    let flags = &d["flags"];
    for key in ["q1_above_2n_minus_5", "qn_below_3", "edges_above_bound", "x_below_bound", "t_below_8"] {
        assert_eq!(flags[key], true, "{key}");
    }
}
