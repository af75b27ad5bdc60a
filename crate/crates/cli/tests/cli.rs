use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ecgroups(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecgroups"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_of_f5() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecgroups(dir.path(), &["census", "5"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["F"], 11);
    assert_eq!(v["G_max"], 2);
    assert_eq!(v["t_max"], serde_json::json!([0]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 11);
    let keys: Vec<(u64, u64)> =
        entries.iter().map(|e| (e["n"].as_u64().unwrap(), e["m"].as_u64().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let lower = v["bounds"]["lower"].as_f64().unwrap();
    let upper = v["bounds"]["upper"].as_f64().unwrap();
    assert!(lower < 11.0 && 11.0 < upper);
    assert!(dir.path().join("class_numbers.cnt").exists());
}

#[test]
fn census_rejects_non_prime_power() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecgroups(dir.path(), &["census", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a prime power"));
}

#[test]
fn census_of_f4_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecgroups(dir.path(), &["census", "4", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,t,count"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    // supersingular traces 0, +-2, +-4
    for row in ["1,5,0,1", "1,3,2,2", "1,7,-2,2", "1,1,4,1", "3,3,-4,1"] {
        assert!(rows.contains(&row), "{row}");
    }
}

#[test]
fn verify_skips_small_characteristic() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecgroups(dir.path(), &["verify", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("q=5 ok"));
    assert!(text.contains("q=7 ok"));
    assert!(text.contains("q=8 skipped"));
    assert!(text.contains("checked 2, skipped 4, mismatched 0"));
}

#[test]
fn verify_above_cap_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecgroups(dir.path(), &["verify", "300"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ecgroups(dir.path(), &["verify", "30", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let f25 = v.as_array().unwrap().iter().find(|r| r["q"] == 25).unwrap();
    assert_eq!(f25["status"], "checked");
    assert_eq!(f25["mismatches"], serde_json::json!([]));
}

#[test]
fn avg_and_theta() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecgroups(dir.path(), &["avg", "0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = ecgroups(dir.path(), &["theta", "1"]);
    assert!(stdout(&o).starts_with("theta = 2.666666667\n"));

    // sum of per-q census F values
    let mut total = 0;
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let o = ecgroups(dir.path(), &["census", &q.to_string()]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        total += v["F"].as_u64().unwrap();
    }
    let o = ecgroups(dir.path(), &["avg", "10", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sum"].as_u64().unwrap(), total);
}

#[test]
fn sweep_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let o = ecgroups(dir.path(), &["sweep", "2000", "--out", a.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ratio-1 primes: 2 5 7 17 29 41 101 1009 1109 1879"));
    let o = ecgroups(dir.path(), &["sweep", "2000", "--out", b.to_str().unwrap(), "--threads", "1"]);
    assert!(o.status.success());

    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next(), Some("p,G,I,ratio_num,ratio_den,t_max,same_t,m_at_max,scaled"));
    assert_eq!(lines.count(), 303);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ecgroups(dir.path(), &["frobnicate"]).status.code(), Some(1));
}
