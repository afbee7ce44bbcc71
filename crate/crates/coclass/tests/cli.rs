//! End-to-end runs of the command-line binary.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use coclass::canon::{canonical_key, CountMode};
use coclass::families::from_metadata;
use coclass::tables::MulTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn list_prints_one_line_per_presentation() {
    let out = run(&["list", "--order", "8", "--coclass", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12);
    assert!(text
        .lines()
        .all(|l| l.starts_with('<') && l.contains("family=")));

    let out = run(&["list", "--order", "7", "--coclass", "2", "--gen-size", "2"]);
    assert_eq!(stdout(&out).lines().count(), 34);

    let out = run(&["list", "--order", "4", "--coclass", "1"]);
    assert_eq!(stdout(&out).lines().count(), 8);
}

#[test]
fn list_rejects_unclassified_domains() {
    let out = run(&["list", "--order", "3", "--coclass", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["list", "--order", "6", "--coclass", "2"]);
    assert_eq!(out.status.code(), Some(2), "order 6 needs --gen-size 3");
    let out = run(&["list", "--order", "6", "--coclass", "2", "--gen-size", "3"]);
    assert!(out.status.success());
}

#[test]
fn list_output_reconstructs_and_realizes_identically() {
    let out = run(&["list", "--order", "6", "--coclass", "2", "--gen-size", "3"]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let (text, meta) = line.split_once("  ").expect("two-space separator");
        let mut parts = meta.split_whitespace();
        let family = parts.next().unwrap().strip_prefix("family=").unwrap();
        let mut params = BTreeMap::new();
        for kv in parts {
            let (k, v) = kv.split_once('=').unwrap();
            if k != "selfdual" && k != "commutative" {
                params.insert(k.to_string(), v.parse::<i64>().unwrap());
            }
        }
        let rebuilt = from_metadata(family, &params).unwrap();
        assert_eq!(rebuilt.text(), text);
        assert_eq!(rebuilt.metadata(), meta);
        rebuilt.realize().unwrap();
    }
}

#[test]
fn realize_and_inspect_round_trip() {
    let out = run(&["realize", "--order", "8", "--coclass", "1", "--index", "0"]);
    assert!(out.status.success());
    let table_text = stdout(&out);
    let table = MulTable::parse(&table_text).unwrap();
    assert_eq!(table.order(), 8);

    let dir = std::env::temp_dir().join("coclass-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h2_order8.txt");
    std::fs::write(&path, &table_text).unwrap();

    let out = run(&["inspect", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert!(report.contains("nilpotent: yes"));
    assert!(report.contains("class: 6"));
    assert!(report.contains("coclass: 1"));
    assert!(report.contains("commutative: yes"));
    assert!(report.contains("self-dual: yes"));
    let expected_key = canonical_key(&table, CountMode::UpToIso).unwrap().to_hex();
    assert!(report.contains(&format!("canonical-key-iso: {expected_key}")));

    // index 9 in the order-8 coclass-1 list is X: self-dual and commutative
    let out = run(&["realize", "--order", "8", "--coclass", "1", "--index", "9"]);
    let x_path = dir.join("x_order8.txt");
    std::fs::write(&x_path, stdout(&out)).unwrap();
    let out = run(&["inspect", x_path.to_str().unwrap()]);
    let report = stdout(&out);
    assert!(report.contains("self-dual: yes"));
    assert!(report.contains("commutative: yes"));
}

#[test]
fn inspect_zero_semigroup_and_non_nilpotent() {
    let dir = std::env::temp_dir().join("coclass-cli-test");
    std::fs::create_dir_all(&dir).unwrap();

    let zero4 = dir.join("zero4.txt");
    std::fs::write(&zero4, "4\n3 3 3 3\n3 3 3 3\n3 3 3 3\n3 3 3 3\n").unwrap();
    let out = run(&["inspect", zero4.to_str().unwrap()]);
    let report = stdout(&out);
    assert!(report.contains("class: 1"));
    assert!(report.contains("coclass: 2"));
    assert!(report.contains("min-generating-set: [0 1 2] (size 3)"));

    let left_zero = dir.join("leftzero.txt");
    std::fs::write(&left_zero, "2\n0 0\n1 1\n").unwrap();
    let out = run(&["inspect", left_zero.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("nilpotent: no"));

    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "2\n1 0\n0 0\n").unwrap();
    let out = run(&["inspect", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("not associative"));
}

#[test]
fn count_outputs_csv() {
    let out = run(&[
        "count",
        "--coclass",
        "2",
        "--order",
        "13",
        "--mode",
        "iso",
        "--source",
        "formula",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "type,mode,order,count,source\ncoclass2,iso,13,813,formula\n"
    );

    let out = run(&[
        "count",
        "--coclass",
        "1",
        "--order",
        "4",
        "--mode",
        "commutative",
        "--source",
        "table1",
    ]);
    assert_eq!(
        stdout(&out),
        "type,mode,order,count,source\ncoclass1,commutative,4,5,table1\n"
    );

    let out = run(&[
        "count",
        "--coclass",
        "2",
        "--order",
        "9",
        "--gen-size",
        "3",
        "--mode",
        "anti-iso",
        "--source",
        "families",
    ]);
    assert_eq!(
        stdout(&out),
        "type,mode,order,count,source\ncoclass2-gen3,anti-iso,9,243,families\n"
    );

    let out = run(&[
        "count",
        "--coclass",
        "2",
        "--order",
        "4",
        "--mode",
        "iso",
        "--source",
        "bruteforce",
    ]);
    assert_eq!(
        stdout(&out),
        "type,mode,order,count,source\ncoclass2,iso,4,1,bruteforce\n"
    );

    let out = run(&[
        "count",
        "--coclass",
        "1",
        "--order",
        "4",
        "--mode",
        "iso",
        "--source",
        "formula",
    ]);
    assert_eq!(out.status.code(), Some(2), "below the formula domain");
}

#[test]
fn bruteforce_counts_and_keys() {
    let out = run(&["bruteforce", "--order", "4", "--coclass", "1"]);
    assert_eq!(stdout(&out), "8\n");

    let out = run(&[
        "bruteforce",
        "--order",
        "4",
        "--coclass",
        "1",
        "--mode",
        "iso",
        "--print-keys",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("9"));
    let keys: Vec<&str> = lines.collect();
    assert_eq!(keys.len(), 9);
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "keys are emitted in ascending order");

    let out = run(&["bruteforce", "--order", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["list", "--order", "9", "--coclass", "2", "--gen-size", "2"],
        vec![
            "realize",
            "--order",
            "6",
            "--coclass",
            "2",
            "--gen-size",
            "3",
            "--index",
            "17",
        ],
        vec!["bruteforce", "--order", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(a.status.success());
    }
}

#[test]
fn verify_small_run_passes() {
    let out = run(&["verify", "--max-order", "5"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(!text.contains("FAIL"));

    let out = run(&["verify", "--max-order", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--max-order", "14"]);
    assert_eq!(out.status.code(), Some(2));
}
