//! Text and JSON rendering of solved profiles.

use serde::Serialize;
use std::fmt::Write;

use crate::analysis::{margin_matrix, Paradox, ParadoxReport};
use crate::model::{Alt, AltSet, Profile, TieRule, VotingRule};
use crate::solver::SolveResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize)]
struct JsonFlags {
    condorcet_winner: bool,
    condorcet_loser: bool,
    pareto_weak: bool,
    pareto_strong: bool,
}

#[derive(Serialize)]
struct JsonStats {
    states_visited: u64,
    memo_hits: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    rule: &'static str,
    tie: String,
    alternatives: &'a [String],
    voters: Vec<String>,
    winners: Vec<&'a str>,
    path: Vec<Vec<&'a str>>,
    condorcet_winner: Option<&'a str>,
    condorcet_loser: Option<&'a str>,
    pareto_pairs: Vec<[&'a str; 2]>,
    paradoxes: JsonFlags,
    stats: JsonStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    margins: Option<Vec<Vec<i64>>>,
}

fn names(profile: &Profile, set: AltSet) -> Vec<&str> {
    set.iter().map(|a| profile.label(a)).collect()
}

fn rule_name(rule: VotingRule) -> &'static str {
    match rule {
        VotingRule::Plurality => "plurality",
        VotingRule::Approval => "approval",
    }
}

fn tie_name(profile: &Profile) -> String {
    match profile.tie() {
        TieRule::Uniform => "uniform".into(),
        TieRule::Deterministic(o) => format!("deterministic:{}", profile.format_order(o)),
    }
}

fn json<'a>(profile: &'a Profile, result: &SolveResult, report: &ParadoxReport, margins: bool) -> JsonReport<'a> {
    let label = |a: Option<Alt>| a.map(|a| profile.label(a));
    JsonReport {
        rule: rule_name(profile.rule()),
        tie: tie_name(profile),
        alternatives: profile.labels(),
        voters: profile.voters().iter().map(|v| profile.format_order(v)).collect(),
        winners: names(profile, result.outcome.members()),
        path: result.path.iter().map(|b| names(profile, b.approved())).collect(),
        condorcet_winner: label(report.condorcet_winner),
        condorcet_loser: label(report.condorcet_loser),
        pareto_pairs: report
            .pareto_pairs
            .iter()
            .map(|(x, y)| [profile.label(*x), profile.label(*y)])
            .collect(),
        paradoxes: JsonFlags {
            condorcet_winner: report.flags.condorcet_winner,
            condorcet_loser: report.flags.condorcet_loser,
            pareto_weak: report.flags.pareto_weak,
            pareto_strong: report.flags.pareto_strong,
        },
        stats: JsonStats {
            states_visited: result.stats.states_visited,
            memo_hits: result.stats.memo_hits,
        },
        margins: margins.then(|| margin_matrix(profile)),
    }
}

fn text(profile: &Profile, result: &SolveResult, report: &ParadoxReport, show_path: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rule: {}  tie: {}", rule_name(profile.rule()), tie_name(profile));
    let orders: Vec<String> = profile.voters().iter().map(|v| profile.format_order(v)).collect();
    let width = orders
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("preference".len());
    if show_path {
        let _ = writeln!(out, "{:<6} {:<width$}  ballot", "voter", "preference");
    } else {
        let _ = writeln!(out, "{:<6} preference", "voter");
    }
    for (i, order) in orders.iter().enumerate() {
        if show_path {
            let _ = writeln!(
                out,
                "{:<6} {:<width$}  {}",
                i + 1,
                order,
                profile.format_set(result.path[i].approved())
            );
        } else {
            let _ = writeln!(out, "{:<6} {}", i + 1, order);
        }
    }
    let opt = |a: Option<Alt>| a.map_or("-".to_string(), |a| profile.label(a).to_string());
    let _ = writeln!(out, "winners: {}", profile.format_set(result.outcome.members()));
    let _ = writeln!(out, "condorcet winner: {}", opt(report.condorcet_winner));
    let _ = writeln!(out, "condorcet loser: {}", opt(report.condorcet_loser));
    let pairs: Vec<String> = report
        .pareto_pairs
        .iter()
        .map(|(x, y)| format!("{}>{}", profile.label(*x), profile.label(*y)))
        .collect();
    let _ = writeln!(
        out,
        "pareto dominations: {}",
        if pairs.is_empty() { "-".into() } else { pairs.join(" ") }
    );
    let flags: Vec<String> = Paradox::ALL
        .iter()
        .map(|p| format!("{}={}", p.name(), if report.flags.get(*p) { "yes" } else { "no" }))
        .collect();
    let _ = writeln!(out, "paradoxes: {}", flags.join(" "));
    let _ = writeln!(
        out,
        "stats: {} states, {} memo hits",
        result.stats.states_visited, result.stats.memo_hits
    );
    out
}

/// Renders a solved profile. Text output lists the equilibrium ballots only
/// when `show_path` is set; JSON always carries every field.
pub fn format_report(
    profile: &Profile,
    result: &SolveResult,
    report: &ParadoxReport,
    format: ReportFormat,
    show_path: bool,
) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&json(profile, result, report, false)).expect("report serializes")
        }
        ReportFormat::Text => text(profile, result, report, show_path),
    }
}

/// Like [`format_report`], plus the pairwise margin matrix.
pub fn format_analysis(
    profile: &Profile,
    result: &SolveResult,
    report: &ParadoxReport,
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&json(profile, result, report, true)).expect("report serializes")
        }
        ReportFormat::Text => {
            let mut out = text(profile, result, report, true);
            let margins = margin_matrix(profile);
            let w = profile.labels().iter().map(String::len).max().unwrap_or(1).max(3);
            let _ = write!(out, "margins:\n{:>w$}", "");
            for l in profile.labels() {
                let _ = write!(out, " {l:>w$}");
            }
            out.push('\n');
            for a in profile.alternatives() {
                let _ = write!(out, "{:>w$}", profile.label(a));
                for b in profile.alternatives() {
                    let cell = if a == b {
                        "-".to_string()
                    } else {
                        format!("{:+}", margins[a.index()][b.index()])
                    };
                    let _ = write!(out, " {cell:>w$}");
                }
                out.push('\n');
            }
            out
        }
    }
}
