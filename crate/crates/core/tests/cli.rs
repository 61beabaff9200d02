use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_promisegraph");
const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/boeing-737max.pml");

const CLEAN: &str = "\
agent A kind=organization
agent B
promise o from A to B { offer t \"served\" }
promise a from B to A { accept t }
";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .env("PROMISEGRAPH_NO_COLOR", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_corpus_exits_0() {
    let o = run(&["check", CORPUS], "");
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
}

#[test]
fn analyze_corpus_json_exits_1_with_clean_stdout() {
    let o = run(&["analyze", CORPUS, "--format", "json"], "");
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["violation"], 2);
    assert!(o.stderr.is_empty());
}

#[test]
fn export_public_view_lacks_private_promise() {
    let o = run(
        &["export", CORPUS, "--format", "dot", "--viewpoint", "Public"],
        "",
    );
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph promises {"));
    assert!(!dot.contains("tooltip=\"non-antistall\""));
    assert_eq!(dot, promisegraph::corpus::GOLDEN_PUBLIC_VIEW_DOT);

    let faa = run(
        &["export", CORPUS, "--format", "dot", "--viewpoint", "FAA"],
        "",
    );
    assert!(String::from_utf8(faa.stdout)
        .unwrap()
        .contains("tooltip=\"non-antistall\""));
}

#[test]
fn exit_code_trichotomy() {
    assert_eq!(code(&run(&["analyze", "-"], CLEAN)), 0);
    assert_eq!(code(&run(&["analyze", CORPUS], "")), 1);
    let broken = run(
        &["analyze", "-", "--format", "json"],
        "promise p1 from X { offer t }",
    );
    assert_eq!(code(&broken), 2);
    assert!(broken.stdout.is_empty());
    let err = String::from_utf8(broken.stderr).unwrap();
    assert!(err.contains("parse-error"), "{err}");
}

#[test]
fn validation_errors_exit_2() {
    let o = run(&["check", "-"], "agent A\nagent A\n");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("duplicate-id"));
}

#[test]
fn trust_table() {
    let o = run(&["trust", CORPUS, "--format", "json"], "");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["subject"], "Benno-Baksteen");
    assert!((v[0]["value"].as_f64().unwrap() - 0.2).abs() < 1e-12);

    let o = run(&["trust", CORPUS, "--trust-beta", "1"], "");
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("Authors -> Benno-Baksteen  0.0000"), "{text}");
}

#[test]
fn quorum_one_silences_single_source() {
    let o = run(
        &["analyze", CORPUS, "--quorum", "1", "--format", "json"],
        "",
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rules: Vec<&str> = v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["rule"].as_str().unwrap())
        .collect();
    assert!(!rules.contains(&"single-source-acceptance"));
    assert!(rules.contains(&"behalf-of-violation"));
    assert_eq!(code(&o), 1);
}

#[test]
fn report_is_text_summary() {
    let o = run(&["report", CORPUS], "");
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.ends_with("32 findings (2 violation, 27 warning, 3 info)\n"));
    assert!(!text.contains('\x1b'));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", CORPUS, "--format", "json"],
        vec!["export", CORPUS],
        vec!["export", CORPUS, "--format", "dot"],
        vec!["report", CORPUS],
    ] {
        assert_eq!(run(&args, "").stdout, run(&args, "").stdout);
    }
}

#[test]
fn stdin_and_file_agree() {
    let src = std::fs::read_to_string(CORPUS).unwrap();
    let from_file = run(&["export", CORPUS], "");
    let from_stdin = run(&["export", "-"], &src);
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn bad_invocations_exit_2_with_one_line() {
    for args in [
        vec!["analyze", "/nonexistent.pml"],
        vec!["analyze", CORPUS, "--quorum", "0"],
        vec!["analyze", CORPUS, "--trust-initial", "-0.1"],
        vec!["analyze", CORPUS, "--viewpoint", "Public"],
        vec!["export", CORPUS, "--viewpoint", "Nobody"],
        vec!["explode", CORPUS],
        vec![],
    ] {
        let o = run(&args, "");
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert_eq!(
            String::from_utf8(o.stderr).unwrap().lines().count(),
            1,
            "{args:?}"
        );
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&run(&["--help"], "")), 0);
    assert_eq!(code(&run(&["analyze", "--help"], "")), 0);
    assert_eq!(code(&run(&["--version"], "")), 0);
}
