use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn frobtilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobtilt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = frobtilt(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn temp_spec(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn cubic_surface_from_file() {
    let exported = frobtilt(&["export-spec", "--family", "del_pezzo", "--d", "3"]);
    assert!(exported.status.success());
    let file = temp_spec(&stdout(&exported));
    let path = file.path().to_str().unwrap();
    let o = frobtilt(&["chi", "--spec", path, "--p", "2", "--e", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("chi = 1\n"), "{text}");
    assert!(text.contains("not tilting"), "{text}");
}

#[test]
fn handwritten_spec_file() {
    let file = temp_spec(
        r#"{"name": "degree one", "dim": 2,
            "generators": [{"name": "c1", "degree": 1}, {"name": "c2", "degree": 2}],
            "intersections": {"c1^2": "1/1", "c2": "11"},
            "family": {"kind": "del_pezzo", "params": {"d": 1}}}"#,
    );
    let o = frobtilt(&["chi", "--spec", file.path().to_str().unwrap(), "--p", "3"]);
    assert!(stdout(&o).contains("chi = -45\n"), "{}", stdout(&o));
}

#[test]
fn degree_one_char_three() {
    let text = stdout(&frobtilt(&["chi", "--family", "del_pezzo", "--d", "1", "--p", "3", "--e", "1"]));
    assert!(text.contains("chi = -45\n"), "{text}");
    let v = json(&["chi", "--family", "del_pezzo", "--d", "1", "--p", "3"]);
    assert_eq!(v["chi"], "-45");
    assert_eq!(v["verdict"]["verdict"], "HigherCohomologyNonzero");
}

#[test]
fn malformed_json_is_a_usage_error() {
    let file = temp_spec("{\"name\": ");
    let o = frobtilt(&["chi", "--spec", file.path().to_str().unwrap(), "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_intersection_number() {
    let file = temp_spec(
        r#"{"name": "incomplete", "dim": 2,
            "generators": [{"name": "c1", "degree": 1}, {"name": "c2", "degree": 2}],
            "intersections": {"c1^2": "3/1"}}"#,
    );
    let o = frobtilt(&["chi", "--spec", file.path().to_str().unwrap(), "--p", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("c2"), "{err}");
}

#[test]
fn bad_prime_and_missing_source() {
    assert_eq!(frobtilt(&["chi", "--family", "del_pezzo", "--d", "3", "--p", "4"]).status.code(), Some(2));
    assert_eq!(frobtilt(&["chi", "--p", "2"]).status.code(), Some(2));
    assert_eq!(frobtilt(&["chi", "--family", "fano3", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn del_pezzo_scan_matches_closed_form() {
    let v = json(&["scan", "--family", "del_pezzo", "--d", "1..9", "--p", "2,3", "--e", "1..2"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r["match"] == true));
    let keys: Vec<(u64, u64, u64)> = rows
        .iter()
        .map(|r| (r["value"].as_u64().unwrap(), r["p"].as_u64().unwrap(), r["e"].as_u64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn fano_scan_leading_sign() {
    let v = json(&["scan", "--family", "fano3", "--vol", "2..24:2", "--p", "2", "--e", "1..3"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 36);
    for r in rows {
        let vol = r["value"].as_u64().unwrap();
        let sign = r["leading_sign"].as_i64().unwrap();
        assert_eq!(sign < 0, vol < 24, "vol = {vol}");
    }
}

#[test]
fn empty_range_is_a_usage_error() {
    let o = frobtilt(&["scan", "--family", "del_pezzo", "--d", "1..9", "--p", "2", "--e", "3..1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn symbolic_polynomials() {
    let text = stdout(&frobtilt(&["symbolic", "--family", "del_pezzo", "--d", "2"]));
    assert!(text.contains("(-1/2)q^4 + (3/2)q^2"), "{text}");
    let text = stdout(&frobtilt(&["symbolic", "--family", "fano3", "--vol", "22"]));
    assert!(text.contains("(-1/12)q^6 + (13/12)q^4"), "{text}");
    let v = json(&["symbolic", "--family", "fano3", "--vol", "22"]);
    assert_eq!(v["display"], "(-1/12)q^6 + (13/12)q^4");
    assert_eq!(v["polynomial"][6], "-1/12");
}

#[test]
fn text_and_json_agree() {
    for (d, p, e) in [("2", "5", "2"), ("7", "3", "1"), ("9", "2", "3")] {
        let args = ["chi", "--family", "del_pezzo", "--d", d, "--p", p, "--e", e];
        let text = stdout(&frobtilt(&args));
        let v = json(&args);
        assert!(text.contains(&format!("chi = {}\n", v["chi"].as_str().unwrap())), "{text}");
    }
    let args = ["scan", "--family", "pn", "--n", "1..3", "--p", "2,3"];
    let text = stdout(&frobtilt(&args));
    let v = json(&args);
    for (line, row) in text.lines().skip(1).zip(v.as_array().unwrap()) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[4], row["chi"].as_str().unwrap());
    }
}

#[test]
fn diffop_demo_prints_distinct_matrices() {
    let o = frobtilt(&["diffop-demo", "--p", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("i(d/dt):") && text.contains("j(d/dt):"));
    assert!(text.contains("verdict: i(d/dt) != j(d/dt)"), "{text}");
    let v = json(&["diffop-demo", "--p", "2"]);
    assert_ne!(v["inclusion"], v["embedding"]);
    assert_eq!(v["embedding"]["entries"][0][2], serde_json::json!([1]));
}

#[test]
fn verify_passes() {
    let o = frobtilt(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("diffop p=2"));
    let v = json(&["verify"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn exported_spec_round_trips() {
    for args in [
        ["export-spec", "--family", "fano3", "--vol", "22"],
        ["export-spec", "--family", "pn", "--n", "3"],
    ] {
        let first = stdout(&frobtilt(&args));
        let file = temp_spec(&first);
        let v: Value = serde_json::from_str(&first).unwrap();
        let o = frobtilt(&["symbolic", "--spec", file.path().to_str().unwrap(), "--json"]);
        assert!(o.status.success());
        assert_eq!(v["intersections"]["c1^3"].as_str().unwrap().split('/').nth(1), Some("1"));
    }
}
