use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lieposet"));
    c.env_remove("LIEPOSET_SEED")
        .env_remove("LIEPOSET_PRIME")
        .env_remove("LIEPOSET_SAMPLES");
    c
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

const FOUR_RELATIONS: &str =
    r#"{"family": "C", "n": 3, "relations": [[-2, 1], [-1, 2], [-2, 3], [-3, 2]]}"#;
const LOOP_POSET: &str = r#"{"family": "C", "n": 3, "relations": [[-3, -2], [-3, 1], [-3, 3]]}"#;

#[test]
fn analyze_report() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", FOUR_RELATIONS);
    let (code, out, err) = run(bin().arg("analyze").arg(&f));
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 5);
    assert_eq!(v["index"], 1);
    assert_eq!(v["contact"], true);
    assert_eq!(v["frobenius"], false);
    assert_eq!(v["method"], "explicitForm");
    assert_eq!(v["determinant"], "1");

    let f3 = write(dir.path(), "loop.json", LOOP_POSET);
    let (code, out, _) = run(bin().args(["analyze", "--format", "text"]).arg(&f3));
    assert_eq!(code, 0);
    assert!(out.contains("frobenius    true"), "{out}");
    assert!(out.contains("height       (1, 1)"), "{out}");
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(
        dir.path(),
        "d.json",
        r#"{"family": "D", "n": 1, "relations": [[-1, 1]]}"#,
    );
    let (code, _, err) = run(bin().arg("analyze").arg(&d));
    assert_eq!(code, 1);
    assert!(err.contains("CoverViolation"), "{err}");

    let cyc = write(
        dir.path(),
        "c.json",
        r#"{"family": "C", "n": 2, "relations": [[2, -1], [-1, 2]]}"#,
    );
    let (code, _, err) = run(bin().arg("analyze").arg(&cyc));
    assert_eq!(code, 1);
    assert!(err.contains("OrderViolation"), "{err}");

    let junk = write(dir.path(), "j.json", "{");
    assert_eq!(run(bin().arg("index").arg(&junk)).0, 1);
    assert_eq!(run(bin().args(["analyze", "/nonexistent/poset.json"])).0, 1);
    assert_eq!(run(bin().args(["frobnicate"])).0, 1);

    let ok = write(dir.path(), "ok.json", FOUR_RELATIONS);
    let (code, _, err) = run(bin().args(["index", "--prime", "21"]).arg(&ok));
    assert_eq!(code, 1);
    assert!(err.contains("NotPrime"), "{err}");

    let tall = write(
        dir.path(),
        "t.json",
        r#"{"family": "C", "n": 2, "relations": [[-2, -1], [-1, 1]]}"#,
    );
    let (code, _, err) = run(bin().arg("contact").arg(&tall));
    assert_eq!(code, 1);
    assert!(err.contains("HeightError"), "{err}");
    // analyze still reports the index of a tall poset
    assert_eq!(run(bin().arg("analyze").arg(&tall)).0, 0);
}

#[test]
fn index_and_contact_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "loop.json", LOOP_POSET);
    let (code, out, _) = run(bin().arg("index").arg(&f));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (
            v["dim"].as_u64(),
            v["oracle"].as_u64(),
            v["combinatorial"].as_u64()
        ),
        (Some(6), Some(0), Some(0))
    );

    let (code, out, _) = run(bin().arg("contact").arg(&f));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "notcontact");
    assert_eq!(v["method"], "graphCriterion");
}

#[test]
fn verify_and_enumerate() {
    let (code, out, _) = run(bin().args(["verify", "--family", "C", "--n", "3"]));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["candidateCount"], 216);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);

    let (code, out, _) = run(bin().args(["enumerate", "--family", "C", "--n", "2", "--jobs", "2"]));
    assert_eq!(code, 0);
    let lines: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["candidateCount"], 12);
    assert_eq!(
        summary["validCount"].as_u64().unwrap() as usize,
        lines.len() - 1
    );
    assert!(lines[..lines.len() - 1]
        .iter()
        .all(|r| r["family"] == "C" && r["n"] == 2));

    assert_eq!(
        run(bin().args(["verify", "--family", "C", "--n", "9"])).0,
        1
    );
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "loop.json", LOOP_POSET);
    let (code, out, _) = run(bin().arg("export-dot").arg(&f));
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph hasse"), "{out}");
    let (_, out, _) = run(bin().args(["export-dot", "--graph", "relation"]).arg(&f));
    assert!(out.starts_with("graph relation"), "{out}");
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", FOUR_RELATIONS);
    let a = run(bin().args(["analyze", "--seed", "42"]).arg(&f)).1;
    let b = run(bin().args(["analyze", "--seed", "42"]).arg(&f)).1;
    assert_eq!(a, b);

    let via_env = run(bin().env("LIEPOSET_SEED", "42").arg("analyze").arg(&f)).1;
    assert_eq!(a, via_env);
    let flag_wins = run(bin()
        .env("LIEPOSET_SEED", "7")
        .args(["analyze", "--seed", "42"])
        .arg(&f))
    .1;
    assert_eq!(a, flag_wins);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 42);

    let v: Value = serde_json::from_str(
        &run(bin()
            .env("LIEPOSET_PRIME", "1000003")
            .arg("analyze")
            .arg(&f))
        .1,
    )
    .unwrap();
    assert_eq!(v["prime"], 1000003);

    let e1 = run(bin().args(["enumerate", "--family", "D", "--n", "3", "--jobs", "1"])).1;
    let e2 = run(bin().args(["enumerate", "--family", "D", "--n", "3", "--jobs", "3"])).1;
    assert_eq!(e1, e2);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", FOUR_RELATIONS);
    let target = dir.path().join("out.json");
    let (code, out, _) = run(bin().arg("analyze").arg(&f).arg("-o").arg(&target));
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["dim"], 5);
}

#[test]
fn in_process_runner() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lieposet::cli::run(
        [
            "lieposet", "verify", "--family", "B", "--n", "2", "--format", "text",
        ],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("failures 0"));
    let code = lieposet::cli::run(["lieposet", "--help"], &mut Vec::new(), &mut Vec::new());
    assert_eq!(code, 0);
}
