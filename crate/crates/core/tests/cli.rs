use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Copies fixtures into a scratch directory so outputs land there.
fn scratch(names: &[&str]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for n in names {
        fs::copy(fixture(n), dir.path().join(n)).unwrap();
    }
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tambara"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_exit_codes() {
    let dir = scratch(&[
        "fp_f4_c2.json",
        "mut_transfer_swap_removed.json",
        "malformed.json",
    ]);
    let ok = run(dir.path(), &["check", "fp_f4_c2.json"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).ends_with("ok\n"));

    let bad = run(dir.path(), &["check", "mut_transfer_swap_removed.json"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("transfer double coset formula"));
    assert!(stdout(&bad).contains("FAIL  transfer double coset formula: "));

    assert_eq!(
        run(dir.path(), &["check", "malformed.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(dir.path(), &["check", "missing.json"]).status.code(),
        Some(1)
    );
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(1));
}

#[test]
fn decompose_coinduction_gives_one_factor_from_e() {
    let dir = scratch(&["coind_e_c2_f3.json"]);
    let o = run(dir.path(), &["decompose", "coind_e_c2_f3.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("1 factor(s)\n(e, e: 3)\n"), "{out}");
    let check = run(dir.path(), &["check", "coind_e_c2_f3.decomposed.json"]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn decompose_refuses_green_functors() {
    let dir = scratch(&["green_counterexample.json"]);
    let o = run(dir.path(), &["decompose", "green_counterexample.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("Green"));
}

#[test]
fn clarifying_a_clarified_functor_changes_nothing() {
    let dir = scratch(&["fp_f4_c2.json"]);
    let o = run(dir.path(), &["decompose", "fp_f4_c2.json", "--lambda=C2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\nunchanged\n"));
    let iso = run(
        dir.path(),
        &["iso", "fp_f4_c2.json", "fp_f4_c2.clarified.json"],
    );
    assert!(stdout(&iso).starts_with("isomorphic\n"));
}

#[test]
fn clarifying_a_coinduction_away_from_e_gives_zero() {
    let dir = scratch(&["coind_e_c2_f3.json"]);
    let o = run(
        dir.path(),
        &["decompose", "coind_e_c2_f3.json", "--lambda=C2"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("level sizes: e: 1, C2: 1\nzero functor\n"));
    let all = run(
        dir.path(),
        &["decompose", "coind_e_c2_f3.json", "--lambda=all"],
    );
    assert!(stdout(&all).contains("\nunchanged\n"));
    let bad = run(
        dir.path(),
        &["decompose", "coind_e_c2_f3.json", "--lambda=C7"],
    );
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn lewis_diagrams() {
    let dir = scratch(&["burnside_c2_mod4.json", "fp_f4_c2.json", "fp_f2_s3.json"]);
    let b = stdout(&run(dir.path(), &["lewis", "burnside_c2_mod4.json"]));
    let lines: Vec<&str> = b.lines().collect();
    assert_eq!(lines[1], "[e] A(e)/4, 4 elements");
    assert_eq!(lines[2], "  | res e<-C2: 1 -> 1, [C2/e] -> 2");
    assert_eq!(lines[3], "  | tr  e->C2: 1 -> [C2/e]");
    assert_eq!(
        lines[4],
        "  | nm  e->C2: 0 -> 0, 1 -> 1, 2 -> [C2/e]+2, 3 -> [C2/e]+3"
    );
    assert_eq!(lines[5], "[C2] A(C2)/4, 8 elements");

    let f = stdout(&run(dir.path(), &["lewis", "fp_f4_c2.json"]));
    assert_eq!(f.lines().filter(|l| l.starts_with('[')).count(), 2);

    assert_eq!(
        run(dir.path(), &["lewis", "fp_f2_s3.json"]).status.code(),
        Some(4)
    );
    let chained = run(dir.path(), &["lewis", "fp_f2_s3.json", "--chain=e,C3,G"]);
    assert_eq!(chained.status.code(), Some(0));
    assert_eq!(
        run(dir.path(), &["lewis", "fp_f2_s3.json", "--chain=C3,e"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn coinduce_and_restrict_write_valid_files() {
    let dir = scratch(&["fp_f3_trivial.json", "fp_f2_s3.json"]);
    let o = run(
        dir.path(),
        &["coinduce", "--from", "e", "fp_f3_trivial.json"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("level sizes: e: 9, C2: 3"));
    assert_eq!(
        run(dir.path(), &["check", "fp_f3_trivial.coinduced.json"])
            .status
            .code(),
        Some(0)
    );

    let r = run(
        dir.path(),
        &["restrict", "--to", "C3", "fp_f2_s3.json", "--out", "r.json"],
    );
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(run(dir.path(), &["check", "r.json"]).status.code(), Some(0));
    assert_eq!(
        run(dir.path(), &["restrict", "--to", "Q8", "fp_f2_s3.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn iso_search() {
    let dir = scratch(&["coind_e_c2_f3.json", "fp_f3xf3_trivial.json"]);
    let same = run(
        dir.path(),
        &["iso", "coind_e_c2_f3.json", "coind_e_c2_f3.json"],
    );
    assert_eq!(
        stdout(&same),
        "isomorphic\ne: [0, 1, 2, 3, 4, 5, 6, 7, 8]\nC2: [0, 1, 2]\n"
    );
    let diff = run(
        dir.path(),
        &["iso", "coind_e_c2_f3.json", "fp_f3xf3_trivial.json"],
    );
    assert_eq!(diff.status.code(), Some(0));
    assert_eq!(stdout(&diff), "not isomorphic\n");
}

#[test]
fn thread_cap_is_honoured() {
    let dir = scratch(&["fp_f4_c2.json"]);
    let o = Command::new(env!("CARGO_BIN_EXE_tambara"))
        .current_dir(dir.path())
        .env("TAMBARA_THREADS", "1")
        .args(["check", "fp_f4_c2.json", "--fiber-bound=3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
