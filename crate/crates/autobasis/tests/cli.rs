//! Process-level tests of the command-line binary: output shape, the
//! machine-argument forms, and the documented exit codes (0 decided,
//! 1 usage/parse, 2 inconclusive, 3 precondition or state limit).

use std::process::{Command, Output};

fn autobasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autobasis"))
        .args(args)
        .env_remove("AUTOBASIS_MAX_STATES")
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn value(out: &Output, key: &str) -> String {
    let text = stdout(out);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("missing key `{key}` in:\n{text}"))
        .to_string()
}

#[test]
fn basis_report_is_flat_key_value_lines() {
    let out = autobasis(&["basis", "corpus:evil2", "--asymptotic"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(value(&out, "asymptotic_basis"), "true");
    assert_eq!(value(&out, "reason"), "ok");
    assert_eq!(value(&out, "order"), "3");
    assert_eq!(value(&out, "threshold"), "8");
    assert_eq!(value(&out, "exceptions"), "1 2 4 7");
    assert_eq!(value(&out, "zero_in_set"), "true");

    // Identical invocations produce byte-identical reports.
    let again = autobasis(&["basis", "corpus:evil2", "--asymptotic"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn kv_flag_prefixes_a_format_line() {
    let out = autobasis(&["--kv", "gcd", "corpus:cantor3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("format: autobasis.v1"));
    assert_eq!(value(&out, "gcd"), "2");
}

#[test]
fn bare_corpus_names_and_div_targets_resolve() {
    let out = autobasis(&[
        "exceptions",
        "cantor3",
        "--order",
        "2",
        "--mode",
        "exact-sum",
        "--target",
        "div:2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(value(&out, "outcome"), "finite");
    assert_eq!(value(&out, "exception_count"), "0");
    assert_eq!(value(&out, "exceptions"), "-");
}

#[test]
fn infinite_exception_sets_come_with_a_pumpable_witness() {
    let out = autobasis(&["exceptions", "corpus:evil2", "--order", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(value(&out, "outcome"), "infinite");
    for key in ["witness_prefix", "witness_cycle", "pumped", "sample"] {
        assert!(!value(&out, key).is_empty(), "empty `{key}`");
    }
}

#[test]
fn count_accepts_heterogeneous_summand_lists() {
    let out = autobasis(&[
        "count",
        "--summands",
        "digits01base4,digits02base4",
        "--order",
        "2",
        "--n",
        "57",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(value(&out, "count"), "1");
}

#[test]
fn corpus_show_output_reparses_from_a_file_path() {
    let out = autobasis(&["corpus", "show", "rudinshapiro2"]);
    assert_eq!(code(&out), 0);
    let path = std::env::temp_dir().join(format!("cli-roundtrip-{}.aut", std::process::id()));
    std::fs::write(&path, stdout(&out)).expect("temp file");

    let reparsed = autobasis(&["classify", path.to_str().expect("utf-8 path")]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&reparsed), 0, "stderr: {}", stderr(&reparsed));
    assert_eq!(value(&reparsed, "growth"), "exponential");
}

#[test]
fn usage_problems_exit_1() {
    // Unknown corpus entry.
    let out = autobasis(&["basis", "corpus:nosuch"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unknown corpus entry"));

    // Unknown flag (clap-level).
    let out = autobasis(&["basis", "corpus:evil2", "--bogus"]);
    assert_eq!(code(&out), 1);

    // Unreadable machine file.
    let out = autobasis(&["classify", "/nonexistent/machine.aut"]);
    assert_eq!(code(&out), 1);

    // Malformed state-limit override.
    let out = Command::new(env!("CARGO_BIN_EXE_autobasis"))
        .args(["basis", "corpus:evil2"])
        .env("AUTOBASIS_MAX_STATES", "plenty")
        .output()
        .expect("the binary runs");
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("AUTOBASIS_MAX_STATES"));

    // Help and version are not errors.
    assert_eq!(code(&autobasis(&["--help"])), 0);
    assert_eq!(code(&autobasis(&["--version"])), 0);
}

#[test]
fn exhausted_order_search_exits_2() {
    let out = autobasis(&["basis", "corpus:hard(2,3)", "--max-order", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no order up to 2"));
}

#[test]
fn state_limit_overrun_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_autobasis"))
        .args(["basis", "corpus:evil2"])
        .env("AUTOBASIS_MAX_STATES", "2")
        .output()
        .expect("the binary runs");
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("state limit"));
}

#[test]
fn syndetic_and_run_answer_gap_questions() {
    // Consecutive members of the even-binary-ones set are at most 3 apart…
    let holds = autobasis(&["syndetic", "corpus:evil2", "--c", "3"]);
    assert_eq!(code(&holds), 0, "stderr: {}", stderr(&holds));
    assert_eq!(value(&holds, "holds"), "true");

    // …and three consecutive naturals are never all members.
    let run = autobasis(&["run", "corpus:evil2", "--c", "2"]);
    assert_eq!(code(&run), 0, "stderr: {}", stderr(&run));
    assert_eq!(value(&run, "found"), "none");
}
