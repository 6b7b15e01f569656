use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fgsub::constructions::StageLog;
use fgsub::stallings::parse_subgroup_file;

fn fgsub(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgsub")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("handle.grp"), "# three generators\nalphabet: x,y\nxyxyX\nxyxxxYX\nxyXYxyxYX\n").unwrap();
    fs::write(p.join("x.grp"), "alphabet: x,y\nx\n").unwrap();
    fs::write(p.join("y.grp"), "alphabet: x,y\ny\n").unwrap();
    fs::write(p.join("trivial.grp"), "alphabet: x,y\n").unwrap();
    fs::write(p.join("index2.grp"), "alphabet: x,y\nx\nyxY\nyy\n").unwrap();
    dir
}

#[test]
fn membership_exit_codes() {
    let d = workspace();
    let yes = fgsub(d.path(), &["member", "handle.grp", "xyxyX"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("path: 0 "));
    assert_eq!(fgsub(d.path(), &["member", "handle.grp", "y"]).status.code(), Some(1));
    let bad = fgsub(d.path(), &["member", "handle.grp", "xqy"]);
    assert_eq!(bad.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 1"));
}

#[test]
fn malformed_file_reports_line() {
    let d = workspace();
    fs::write(d.path().join("bad.grp"), "alphabet: x,y\nxy\nxzy\n").unwrap();
    let o = fgsub(d.path(), &["rank", "bad.grp"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 2"));
    assert_eq!(fgsub(d.path(), &["rank", "missing.grp"]).status.code(), Some(5));
}

#[test]
fn queries() {
    let d = workspace();
    assert_eq!(stdout(&fgsub(d.path(), &["index", "trivial.grp"])).trim(), "infinite");
    assert_eq!(stdout(&fgsub(d.path(), &["index", "index2.grp"])).trim(), "2");
    assert_eq!(stdout(&fgsub(d.path(), &["rank", "handle.grp"])).trim(), "3");
    let core = stdout(&fgsub(d.path(), &["core", "handle.grp"]));
    assert!(core.contains("handle: length 1 label \"x\""));
    assert!(core.contains("index: infinite"));
    let basis = stdout(&fgsub(d.path(), &["basis", "handle.grp"]));
    let h = parse_subgroup_file(&basis).unwrap();
    let example = parse_subgroup_file(&fs::read_to_string(d.path().join("handle.grp")).unwrap()).unwrap();
    assert_eq!(h, example);
}

#[test]
fn subgroup_outputs_reparse() {
    let d = workspace();
    let join = parse_subgroup_file(&stdout(&fgsub(d.path(), &["join", "x.grp", "y.grp"]))).unwrap();
    assert_eq!(join.index().to_string(), "1");
    let meet = parse_subgroup_file(&stdout(&fgsub(d.path(), &["intersect", "x.grp", "index2.grp"]))).unwrap();
    assert_eq!(meet.rank(), 1);
    let conj = stdout(&fgsub(d.path(), &["--emit", "core", "conjugate", "x.grp", "-g", "y"]));
    let conj = parse_subgroup_file(&conj).unwrap();
    assert!(conj.contains(&conj.alphabet().parse_word("yxY").unwrap()));
    let hall = parse_subgroup_file(&stdout(&fgsub(d.path(), &["hall", "x.grp", "--exclude", "y"]))).unwrap();
    assert!(hall.index().is_finite());
    assert!(!hall.contains(&hall.alphabet().parse_word("y").unwrap()));
}

#[test]
fn preconditions_and_caps() {
    let d = workspace();
    assert_eq!(fgsub(d.path(), &["hall", "x.grp", "--exclude", "xx"]).status.code(), Some(2));
    assert_eq!(fgsub(d.path(), &["shrink", "index2.grp", "y.grp"]).status.code(), Some(2));
    assert_eq!(fgsub(d.path(), &["--max-vertices", "1", "shrink", "x.grp", "y.grp"]).status.code(), Some(3));
}

#[test]
fn shrink_audit_reverifies() {
    let d = workspace();
    let o = fgsub(d.path(), &["shrink", "x.grp", "y.grp", "--exclude", "y", "--audit", "log.txt", "-o", "h.grp"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let h = parse_subgroup_file(&fs::read_to_string(d.path().join("h.grp")).unwrap()).unwrap();
    assert!(h.index() == fgsub::Index::Infinite);
    let log = StageLog::parse(&fs::read_to_string(d.path().join("log.txt")).unwrap()).unwrap();
    assert!(log.certificate_count() > 0);
    log.reverify().unwrap();
}

#[test]
fn pipeline_commands() {
    let d = workspace();
    let p = fgsub(d.path(), &["pair", "x.grp", "y.grp", "-o", "pair"]);
    assert_eq!(p.status.code(), Some(0), "{}", String::from_utf8_lossy(&p.stderr));
    for f in ["A1.grp", "B0.grp", "B1.grp"] {
        parse_subgroup_file(&fs::read_to_string(d.path().join("pair").join(f)).unwrap()).unwrap();
    }
    let f = fgsub(d.path(), &["family", "x.grp", "y.grp", "--audit", "fam.txt"]);
    assert_eq!(f.status.code(), Some(0));
    assert!(stdout(&f).contains("# join"));
    StageLog::parse(&fs::read_to_string(d.path().join("fam.txt")).unwrap()).unwrap().reverify().unwrap();
    let n = fgsub(d.path(), &["normalized", "x.grp", "y.grp"]);
    assert_eq!(n.status.code(), Some(0));
    assert!(stdout(&n).contains("# B2"));
    let c = fgsub(d.path(), &["cover", "handle.grp", "--frame", "x", "--index", "3"]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).contains("# branch:"));
}

#[test]
fn small_cancellation_witness() {
    let d = workspace();
    let o = fgsub(d.path(), &["smallcancel", "--rank", "2", "--word", "xyXY"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# small cancellation: holds"));
    let h = parse_subgroup_file(&text).unwrap();
    assert_eq!(h.rank(), 2);
}

#[test]
fn chain_and_actions() {
    let d = workspace();
    let o = fgsub(d.path(), &["build-r", "--stages", "5", "-o", "chain"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("truncated: no"));
    assert!(d.path().join("chain/R05.grp").exists());
    let v = stdout(&fgsub(d.path(), &["verify-r", "chain", "x.grp"]));
    assert!(v.starts_with("[L : L ∩ R] = 1"));
    let v = stdout(&fgsub(d.path(), &["verify-r", "chain", "index2.grp"]));
    assert!(v.contains("infinite") && v.contains("evidence"));

    let orbit = stdout(&fgsub(d.path(), &["orbit", "chain/R05.grp", "chain/L04.grp", "-g", "x", "--radius", "6"]));
    assert!(orbit.contains("orbit size: 4"));
    assert!(orbit.contains("cell of 4 cosets, interior"));

    let ball = fgsub(d.path(), &["ball", "x.grp", "--radius", "1", "--dot", "ball.dot"]);
    assert_eq!(stdout(&ball).lines().skip(1).collect::<Vec<_>>(), ["1", "y", "Y"]);
    assert!(fs::read_to_string(d.path().join("ball.dot")).unwrap().contains("0 -> 1 [label=\"y\"]"));
    assert_eq!(fgsub(d.path(), &["distinct", "x.grp", "1", "y", "yy"]).status.code(), Some(0));
    assert_eq!(fgsub(d.path(), &["distinct", "x.grp", "1", "x"]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    let d = workspace();
    let args = ["--emit", "core", "shrink", "x.grp", "y.grp", "--dot", "h.dot"];
    let first = stdout(&fgsub(d.path(), &args));
    let dot = fs::read_to_string(d.path().join("h.dot")).unwrap();
    assert_eq!(stdout(&fgsub(d.path(), &args)), first);
    assert_eq!(fs::read_to_string(d.path().join("h.dot")).unwrap(), dot);
}
