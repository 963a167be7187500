use std::io::Write;
use std::process::{Command, Output};

fn seqvote(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqvote"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn profile_file(doc: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(doc.as_bytes()).unwrap();
    f
}

const TABLE_ONE: &str =
    "# five voters, uniform ties\nrule=plurality\ntie=uniform\nalts=A,B,C\nC>A>B\nA>C>B\nA>C>B\nB>A>C\nC>B>A\n";

#[test]
fn verify_paper_passes() {
    let out = seqvote(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("12/12 fixtures pass"), "{stdout}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 12);
}

#[test]
fn solve_json_report() {
    let f = profile_file(TABLE_ONE);
    let out = seqvote(&["solve", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["winners"], serde_json::json!(["C"]));
    assert_eq!(v["condorcet_winner"], "A");
    assert_eq!(v["paradoxes"]["condorcet_winner"], true);
    assert_eq!(v["path"].as_array().unwrap().len(), 5);

    let again = seqvote(&["solve", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.stdout, again.stdout);

    let plain = seqvote(&["solve", f.path().to_str().unwrap(), "--format", "json", "--no-memo"]);
    let w: serde_json::Value = serde_json::from_slice(&plain.stdout).unwrap();
    assert_eq!(w["winners"], v["winners"]);
    assert_eq!(w["path"], v["path"]);
}

#[test]
fn solve_text_with_path() {
    let f = profile_file(TABLE_ONE);
    let out = seqvote(&["solve", f.path().to_str().unwrap(), "--path"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("winners: {C}"), "{stdout}");
    assert!(stdout.contains("ballot"));
    assert!(stdout.contains("condorcet_winner=yes"));
}

#[test]
fn analyze_includes_margins() {
    let f = profile_file(TABLE_ONE);
    let out = seqvote(&["analyze", f.path().to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["margins"][0][2], 1);
    assert_eq!(v["pareto_pairs"], serde_json::json!([]));
}

#[test]
fn parse_errors_exit_one_with_line() {
    let f = profile_file("rule=plurality\ntie=uniform\nalts=A,B,C\nA>A>B\n");
    let out = seqvote(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("line 4") && stderr.contains("duplicate alternative"),
        "{stderr}"
    );

    assert_eq!(seqvote(&["solve"]).status.code(), Some(1));
    assert_eq!(seqvote(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(seqvote(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_finds_and_certifies() {
    let out = seqvote(&[
        "search",
        "--voters",
        "2",
        "--alts",
        "3",
        "--rule",
        "plurality",
        "--tie",
        "deterministic:C>B>A",
        "--paradox",
        "pareto_weak",
        "--limit",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hits"].as_array().unwrap().len(), 1);

    let out = seqvote(&[
        "search",
        "--voters",
        "3",
        "--alts",
        "3",
        "--rule",
        "approval",
        "--tie",
        "uniform",
        "--paradox",
        "pareto_weak",
        "--workers",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hits"], serde_json::json!([]));
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["profiles_scanned"], 36);
}

#[test]
fn search_guard_exits_three() {
    let out = seqvote(&[
        "search",
        "--voters",
        "10",
        "--alts",
        "4",
        "--rule",
        "approval",
        "--tie",
        "uniform",
        "--paradox",
        "pareto_weak",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn search_rejects_bad_arguments() {
    let base = ["search", "--voters", "2", "--alts", "3", "--rule", "approval"];
    let with = |extra: &[&str]| seqvote(&[&base[..], extra].concat());
    assert_eq!(
        with(&["--tie", "random", "--paradox", "pareto_weak"]).status.code(),
        Some(1)
    );
    assert_eq!(
        with(&["--tie", "uniform", "--paradox", "no_show"]).status.code(),
        Some(1)
    );
    assert_eq!(
        with(&["--tie", "deterministic:A>B>Z", "--paradox", "pareto_weak"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn enumerate_counts() {
    let count = |args: &[&str]| {
        let out = seqvote(&[&["enumerate"], args, &["--count"]].concat());
        String::from_utf8(out.stdout).unwrap().trim().parse::<u64>().unwrap()
    };
    assert_eq!(count(&["--voters", "2", "--alts", "3"]), 36);
    assert_eq!(count(&["--voters", "3", "--alts", "3", "--canonical"]), 36);
    assert_eq!(count(&["--voters", "5", "--alts", "2", "--canonical"]), 16);

    let out = seqvote(&["enumerate", "--voters", "2", "--alts", "2"]);
    let lines: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines, ["A>B A>B", "A>B B>A", "B>A A>B", "B>A B>A"]);
}
