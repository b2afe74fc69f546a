use std::io::Write;
use std::process::{Command, Output, Stdio};

fn tpair(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("tpair-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const K6: &str = "# bundles 3/2/2\nbase complete 6\ndemand 7\ne 1 2\ne 1 2\ne 1 2\ne 2 3\ne 2 3\ne 3 1\ne 3 1\n";

#[test]
fn realize_then_verify() {
    let out = tpair(&["realize", "-"], K6);
    assert_eq!(out.status.code(), Some(0));
    let demand = temp_file("k6-demand", K6);
    let real = temp_file("k6-real", &text(&out.stdout));
    let check = tpair(&["verify", demand.to_str().unwrap(), real.to_str().unwrap()], "");
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(text(&check.stdout), "ok\n");
}

#[test]
fn tampered_realization_fails() {
    let demand = temp_file("tamper-demand", "base complete 4\ndemand 2\ne 1 2\ne 1 3\n");
    let real = temp_file("tamper-real", "realization 2\np 1 1 2\np 2 1 2 3\n");
    let out = tpair(&["verify", demand.to_str().unwrap(), real.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("edge-reuse"));
}

#[test]
fn exit_codes() {
    assert_eq!(tpair(&["realize", "-"], "base complete 5\ndemand 0\n").status.code(), Some(0));
    assert_eq!(tpair(&["realize", "-"], "base cube 5\n").status.code(), Some(2));
    let heavy = text(&tpair(&["gen", "one-factor", "24", "5"], "").stdout);
    let out = tpair(&["realize", "-"], &heavy);
    assert_eq!(out.status.code(), Some(3));
    assert!(text(&out.stderr).contains("Δ=5 > 2⌊n/6⌋−4=4"));
    let bundle = text(&tpair(&["gen", "double-bundle", "4"], "").stdout);
    let out = tpair(&["oracle", "-"], &bundle);
    assert_eq!((out.status.code(), text(&out.stdout)), (Some(1), "unrealizable\n".to_string()));
    let grid = text(&tpair(&["gen", "antipodal", "4", "2", "1"], "").stdout);
    assert_eq!(tpair(&["maxedp", "-"], &grid).status.code(), Some(3));
}

#[test]
fn self_check_flag() {
    let input = text(&tpair(&["gen", "one-factor", "30", "6"], "").stdout);
    let out = tpair(&["realize", "--self-check", "-"], &input);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stderr).starts_with("self-check:"));
}

#[test]
fn maxedp_and_bound() {
    let input = text(&tpair(&["gen", "one-factor", "30", "15"], "").stdout);
    let out = tpair(&["maxedp", "-"], &input);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stdout).starts_with("kept 90\n"));
    let capped = tpair(&["maxedp", "--cap", "2", "-"], &input);
    assert!(text(&capped.stdout).starts_with("kept 30\n"));
    let grid = text(&tpair(&["gen", "antipodal", "6", "3", "1"], "").stdout);
    let out = tpair(&["bound", "--len", "3", "--exempt", "0", "-"], &grid);
    assert_eq!(text(&out.stdout), "len 3\nexempt 0\navg_degree 15\nq_max 5\nq_max_floor 5\n");
}

#[test]
fn output_is_deterministic() {
    let input = text(&tpair(&["gen", "antipodal", "24", "2", "1"], "").stdout);
    let a = tpair(&["realize", "-"], &input);
    let b = tpair(&["realize", "-"], &input);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
