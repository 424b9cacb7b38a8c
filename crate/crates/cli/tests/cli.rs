//! Exit codes, output encodings and round trips through the binary.

mod common;

use common::run_binary;
use serde_json::Value;
use severi_core::tropical::{check_balancing, TropicalCurve};

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = run_binary(args);
    (code, serde_json::from_slice(&out).expect("stdout is JSON"))
}

#[test]
fn cusp_invariants() {
    let (code, v) = json(&["germ", "analyze", "y^2 - x^3"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"m": 2, "mu": 2, "tau": 2, "delta": 1, "branches": 1, "ade": "A2"}));
}

#[test]
fn domain_errors_are_json_with_exit_one() {
    let (code, v) = json(&["germ", "analyze", "x^2*y^2"]);
    assert_eq!((code, v["error"].as_str()), (1, Some("NonIsolated")));
    let (code, v) = json(&["defmap", "realize", "--spec", "fixtures/cusps.json", "--target", "1,1,1"]);
    assert_eq!((code, v["error"].as_str()), (1, Some("Unrealizable")));
    let (code, v) = json(&["tropical", "count", "--d", "5", "--delta", "0"]);
    assert_eq!((code, v["error"].as_str()), (1, Some("OutOfRange")));
    let (code, v) = json(&["tropical", "contract", "--curve", "fixtures/conic.json", "--edges", "e7"]);
    assert_eq!((code, v["error"].as_str()), (1, Some("InvalidEdge")));
}

#[test]
fn usage_errors_exit_two_with_stderr_only() {
    for args in [
        vec!["germ", "analyze"],
        vec!["germ", "analyze", "y^2 +* x"],
        vec!["strata", "expdim", "--surface", "p2"],
        vec!["strata", "expdim", "--surface", "p2", "--d", "3", "--bogus"],
        vec!["tropical", "count", "--d", "2", "--delta", "1", "--format", "xml"],
        vec!["defmap", "rank", "--spec", "fixtures/missing.json"],
        vec!["family", "scan", "--samples", "1,2"],
    ] {
        let (code, out, err) = run_binary(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run_binary(&["--help"]);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("tropical"));
}

#[test]
fn csv_single_row() {
    let (code, out, _) = run_binary(&["strata", "expdim", "--surface", "k3", "--g", "4", "--kappa", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        String::from_utf8(out).unwrap(),
        "dim,genus,expdim,max_cusps,nonempty_expected,binding_bound\n4,4,0,2,true,dimension\n"
    );
}

#[test]
fn csv_one_row_per_curve() {
    let (code, out, _) = run_binary(&["tropical", "count", "--d", "3", "--delta", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(out.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "d");
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    let m = headers.iter().position(|h| h == "multiplicity").unwrap();
    assert_eq!(rows.iter().map(|r| r[m].parse::<u64>().unwrap()).sum::<u64>(), 12);
}

#[test]
fn curves_reparse_as_tropical_curves() {
    let (code, v) = json(&["tropical", "count", "--d", "3", "--delta", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], 21);
    for rec in v["per_type"].as_array().unwrap() {
        let c: TropicalCurve = serde_json::from_value(rec["curve"].clone()).unwrap();
        assert!(c.is_consistent() && check_balancing(&c));
    }
}

#[test]
fn algorithms_agree_through_the_cli() {
    for algorithm in ["paths", "floor", "both"] {
        let (code, v) = json(&["tropical", "count", "--d", "3", "--delta", "3", "--algorithm", algorithm]);
        assert_eq!((code, v["total"].as_u64()), (0, Some(15)), "{algorithm}");
        assert_eq!(v["points"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn sequential_flag_does_not_change_output() {
    let args = ["tropical", "count", "--d", "3", "--delta", "2"];
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(run_binary(&args).1, run_binary(&seq).1);
}

#[test]
fn positivity_warning_goes_to_stderr() {
    let (code, out, err) = run_binary(&["strata", "expdim", "--surface", "hirzebruch", "--n", "3", "--a", "2", "--b", "1"]);
    assert_eq!(code, 0);
    serde_json::from_slice::<Value>(&out).unwrap();
    assert!(String::from_utf8(err).unwrap().contains("sufficiently positive"));
}

#[test]
fn library_entry_point_matches_binary() {
    for inv in &common::INVOCATIONS {
        let mut argv = vec!["severi-lab"];
        argv.extend(inv.args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        std::env::set_current_dir(common::tests_dir()).unwrap();
        let code = severi_lab::run(argv, &mut out, &mut err);
        assert_eq!(code, inv.exit, "{}", inv.name);
        assert_eq!(out, run_binary(inv.args).1, "{}", inv.name);
    }
}
