use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeta-xray")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch() -> TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn eval_zeta_two() {
    let o = run(&["eval", "--s", "2+0i"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("1.6449340668"), "{text}");
    assert!(text.contains("method: euler_maclaurin"));
    assert!(text.contains("error bound"));
}

#[test]
fn eval_negative_argument_and_structured_order() {
    let o = run(&["--format", "structured", "eval", "--s", "-3.5-1e-3i"]);
    assert!(o.status.success());
    let line = stdout(&o);
    let keys = ["\"s_re\"", "\"s_im\"", "\"value_re\"", "\"value_im\"", "\"error_bound\"", "\"method\"", "\"warning\""];
    let pos: Vec<usize> = keys.iter().map(|k| line.find(k).expect(k)).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{line}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--s", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["gram", "--n", "5..5"]).status.code(), Some(2));
    assert_eq!(run(&["xray", "--function", "nope", "--rect", "0,1,0,1", "--out", "/dev/null"]).status.code(), Some(2));
    let o = run(&["s", "--t", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn audit_reports_first_violation() {
    let dir = scratch();
    let out = dir.path().join("audit.txt");
    let o = run(&["audit", "--gram", "0..130", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("interval (125, 126) has 0 zeros"), "{text}");
    assert!(text.contains("interval (126, 127) has 2 zeros"), "{text}");
    assert!(!text.contains("interval (12, "));
    let report = std::fs::read_to_string(&out).unwrap();
    // 0..130 excludes 130
    assert_eq!(report.lines().count(), 1 + 130);
    assert!(report.lines().last().unwrap().starts_with("129 "));
}

#[test]
fn audit_progress_and_quiet() {
    let dir = scratch();
    let out = dir.path().join("audit_long.txt");
    let o = run(&["audit", "--gram", "0..2100", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.matches("Gram points").count(), 3, "{err}");
    let o = run(&["--quiet", "audit", "--gram", "0..2100", "--out", out.to_str().unwrap()]);
    assert!(o.stderr.is_empty());
}

#[test]
fn gram_index_origin() {
    let text = stdout(&run(&["gram", "--n", "-1..1"]));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("-1 9.66"));
    assert!(rows[1].starts_with("0 17.8455995"));
    let help = stdout(&run(&["gram", "--help"]));
    assert!(help.contains("-1"));
}

#[test]
fn zeros_and_sigma0() {
    let text = stdout(&run(&["zeros", "--t", "10..26"]));
    assert!(text.contains("1 14.134725"));
    assert!(text.contains("3 25.010857"));
    let text = stdout(&run(&["sigma0", "--digits", "12"]));
    assert!(text.contains("1.19234733719"), "{text}");
    let text = stdout(&run(&["s", "--t", "50"]));
    assert!(text.contains("N(T) = 10"));
}

#[test]
fn sheet_permutation_terms() {
    let text = stdout(&run(&["sheet-perm", "--n", "-1..19"]));
    assert!(text.contains("permutation: 1,2,3,4,5,7,6,8,10,9,11,13,12,14,16,15,17,18,20,19"), "{text}");
}

#[test]
fn xray_output_is_deterministic() {
    let dir = scratch();
    let (a, b, inv) = (dir.path().join("h7a.svg"), dir.path().join("h7b.svg"), dir.path().join("h7.jsonl"));
    let common = ["xray", "--function", "hermite7", "--rect", "-4,4,-3,3"];
    let o = run(&[&common[..], &["--out", a.to_str().unwrap(), "--inventory", inv.to_str().unwrap()]].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("7 zeros"), "{}", stdout(&o));
    let o = run(&[&["--threads", "1", "--quiet"][..], &common[..], &["--out", b.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    assert!(String::from_utf8_lossy(&sa).contains("<svg "));
    let inventory = std::fs::read_to_string(&inv).unwrap();
    assert!(inventory.lines().all(|l| l.starts_with("{\"kind\":")));
}
