// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Drives the `repcol` binary end to end: exit codes, file round trips and
//! reproducible output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use repcol::EdgeColouring;

fn repcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Round-robin 1-factorization of `K_4`: every colour class is a perfect
/// matching, so any two edges of one colour form a 2-repeat of `K2`.
fn one_factorization() -> EdgeColouring {
    EdgeColouring::from_fn(4, |u, v| match (u.min(v), u.max(v)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        _ => 2,
    })
}

#[test]
fn construct_then_verify_absent() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("add11.rfc");
    let out = repcol(&["construct", "--family", "additive", "--n", "11", "-o", path(&file)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let col = EdgeColouring::from_rfc(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(col.num_colours(), 11);
    assert_eq!(col.meta_value("run.family"), Some("additive"));

    let out = repcol(&["verify", path(&file), "--pattern", "C3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("proper true") && text.contains("verdict absent-proven"),
        "{text}"
    );
}

#[test]
fn found_repeat_round_trips_through_certify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k4.rfc");
    let cert = dir.path().join("k4.cert");
    fs::write(&file, one_factorization().to_rfc()).unwrap();

    let out = repcol(&[
        "verify",
        path(&file),
        "--pattern",
        "K2",
        "--k",
        "2",
        "--cert",
        path(&cert),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("verdict found"));

    let out = repcol(&["certify", path(&cert), path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("accept"));

    // the same certificate against a rainbow colouring must be rejected
    let rainbow = dir.path().join("rainbow.rfc");
    fs::write(&rainbow, EdgeColouring::rainbow(4).to_rfc()).unwrap();
    let out = repcol(&["certify", path(&cert), path(&rainbow)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("reject"));
}

#[test]
fn budget_exhaustion_reports_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("add31.rfc");
    let out = repcol(&["construct", "--family", "additive", "--n", "31", "-o", path(&file)]);
    assert!(out.status.success());
    let out = repcol(&[
        "verify",
        path(&file),
        "--pattern",
        "C4",
        "--k",
        "2",
        "--mode",
        "budgeted",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("verdict unknown"));
}

#[test]
fn bad_input_is_an_error() {
    let out = repcol(&["verify", "/nonexistent/file.rfc", "--pattern", "K2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.rfc");
    let out = repcol(&["construct", "--family", "lll", "--n", "10", "-o", path(&file)]);
    assert_eq!(out.status.code(), Some(1), "lll without --pattern must fail");

    let out = repcol(&["bounds", "--pattern", "not-a-pattern", "--n", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_writes_table_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.txt");
    let witnesses = dir.path().join("w");
    let out = repcol(&[
        "search",
        "--pattern",
        "K2",
        "--k",
        "2",
        "--n",
        "3",
        "4",
        "--table",
        path(&table),
        "--witness-dir",
        path(&witnesses),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n=3 value=3 exhaustive=true"), "{text}");
    assert!(text.contains("n=4 value=6 exhaustive=true"), "{text}");
    assert!(fs::read_to_string(&table).unwrap().lines().count() >= 3);
    let files: Vec<_> = fs::read_dir(&witnesses).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 2);
    for f in files {
        let out = repcol(&["verify", path(&f), "--pattern", "K2", "--k", "2"]);
        assert_eq!(out.status.code(), Some(0), "{}", f.display());
    }
}

#[test]
fn bounds_reports_exact_exponents() {
    let out = repcol(&["bounds", "--pattern", "C6", "--k", "2", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("5/3") && text.contains("4/3"), "{text}");
}

#[test]
fn seeded_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.rfc"), dir.path().join("b.rfc"));
    for (file, threads) in [(&a, "1"), (&b, "4")] {
        let out = repcol(&[
            "--threads",
            threads,
            "construct",
            "--family",
            "alg-cycle",
            "--n",
            "31",
            "--d",
            "3",
            "--seed",
            "5",
            "-o",
            path(file),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
