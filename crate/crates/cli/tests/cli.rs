use std::path::PathBuf;
use std::process::{Command, Output};

fn grammar_file(name: &str, rules: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scatterlex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, format!("alphabet: 0 < 1\nstart: S\n{rules}\n")).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scatterlex")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_dense_json() {
    let f = grammar_file("eta.g", "S -> 0 0 S | 1 1 S | 0 1");
    let o = run(&["analyze", f.to_str().unwrap(), "--json", "--certify"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scattered"], false);
    assert_eq!(v["certificate"]["kind"], "quasi_dense_witness");
    assert_eq!(v["certificate"]["u"], "00");
    assert_eq!(v["certificate"]["v"], "11");
    assert_eq!(v["components"][0]["u0"], "0");
}

#[test]
fn analyze_well_ordered_text() {
    let f = grammar_file("omega.g", "S -> 1 S 0 | 1 0");
    for alg in ["fast", "naive", "both"] {
        let o = run(&["analyze", f.to_str().unwrap(), "--algorithm", alg]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.contains("scattered: yes"), "{out}");
        assert!(out.contains("well-ordered: yes"), "{out}");
    }
}

#[test]
fn analyze_errors_exit_one_without_verdict() {
    let o = run(&["analyze", "/definitely/not/here.g"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());

    let bad = grammar_file("bad.g", "S -> 0 T");
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());

    let f = grammar_file("eta2.g", "S -> 0 0 S | 1 1 S | 0 1");
    let o = run(&["analyze", f.to_str().unwrap(), "--algorithm", "quick"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn u0_cap_is_a_clean_error() {
    let f = grammar_file("long.g", "S -> 0 0 0 1 S | 1");
    let o = run(&["analyze", f.to_str().unwrap(), "--max-u0-len", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
}

#[test]
fn normalize_prints_epsilon_flag() {
    let f = grammar_file("zplus.g", "S -> eps | 0 S");
    let o = run(&["normalize", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# epsilon: true\n"), "{out}");
    assert!(out.contains("S -> 0 S | 0"), "{out}");

    let f = grammar_file("single.g", "S -> 0 1");
    let out = stdout(&run(&["normalize", f.to_str().unwrap()]));
    assert!(out.contains("# degenerate"), "{out}");

    let f = grammar_file("junk.g", "S => 0");
    assert_eq!(run(&["normalize", f.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn enumerate_lists_words_in_order() {
    let f = grammar_file("os.g", "S -> 0 S 1 | 0 1");
    let o = run(&["enumerate", f.to_str().unwrap(), "--max-len", "6"]);
    assert_eq!(stdout(&o), "000111\n0011\n01\n");
    let o = run(&["enumerate", f.to_str().unwrap(), "--max-len", "0"]);
    assert_eq!(stdout(&o), "");

    let f = grammar_file("eta3.g", "S -> 0 0 S | 1 1 S | 0 1");
    let o = run(&["enumerate", f.to_str().unwrap(), "--max-len", "4"]);
    assert_eq!(stdout(&o), "0001\n01\n1101\n");
}

#[test]
fn crosscheck_passes() {
    let f = grammar_file("os2.g", "S -> 0 S 1 | 0 1");
    let o = run(&["crosscheck", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn fuzz_is_deterministic() {
    let a = run(&["fuzz", "--count", "10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("10/10"), "{}", stdout(&a));
    let b = run(&["fuzz", "--count", "10", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["fuzz", "--count", "0"]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
}
