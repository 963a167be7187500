use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use seqvote::analysis::{classify_paradoxes, Paradox};
use seqvote::io::{format_analysis, format_report, parse_profile, run_fixtures, serialize_profile, ReportFormat};
use seqvote::model::{default_labels, Alt, PreferenceOrder, Profile, TieRule, VotingRule};
use seqvote::search::{find_paradoxes, find_paradoxes_with_workers, ProfileSpace, SearchSpec, TieSpec};
use seqvote::solver::{solve_with, SolveOptions};
use seqvote::Error;

#[derive(Parser)]
#[command(
    name = "seqvote",
    version,
    about = "Equilibrium outcomes and paradoxes of sequential voting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Plurality,
    Approval,
}

impl From<Rule> for VotingRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Plurality => VotingRule::Plurality,
            Rule::Approval => VotingRule::Approval,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a profile file for its equilibrium winning set.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// List the equilibrium ballots.
        #[arg(long)]
        path: bool,
        /// Recompute every tally state instead of using the state table.
        #[arg(long)]
        no_memo: bool,
    },
    /// Solve a profile and print its pairwise and Pareto structure.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Scan a profile space for elections exhibiting a paradox.
    Search {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        alts: usize,
        #[arg(long, value_enum)]
        rule: Rule,
        /// `uniform`, `deterministic`, or `deterministic:<label>(><label>)*`.
        #[arg(long)]
        tie: String,
        #[arg(long)]
        paradox: Paradox,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        no_canonical: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every embedded published example.
    VerifyPaper,
    /// List the profiles of a space, one per line.
    Enumerate {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        alts: usize,
        #[arg(long)]
        canonical: bool,
        /// Tie rule the space is canonicalized for.
        #[arg(long, default_value = "uniform")]
        tie: String,
        /// Print only the number of profiles.
        #[arg(long)]
        count: bool,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Mismatch,
    Refused(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge(msg) => Failure::Refused(msg),
            other => Failure::Usage(other.into()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(2),
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load(file: &PathBuf) -> anyhow::Result<Profile> {
    let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    parse_profile(&text).with_context(|| format!("{}", file.display()))
}

fn parse_tie(spec: &str, m: usize) -> anyhow::Result<TieSpec> {
    match spec.split_once(':') {
        None if spec == "uniform" => Ok(TieSpec::Uniform),
        None if spec == "deterministic" => Ok(TieSpec::Deterministic(None)),
        Some(("deterministic", order)) => {
            let labels = default_labels(m);
            let ranking = order
                .split('>')
                .map(|l| {
                    labels
                        .iter()
                        .position(|x| x == l.trim())
                        .map(|i| Alt(i as u8))
                        .ok_or_else(|| anyhow!("unknown alternative `{l}`"))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(TieSpec::Deterministic(Some(PreferenceOrder::new(ranking)?)))
        }
        _ => Err(anyhow!("unknown tie rule `{spec}`")),
    }
}

fn one_line(profile: &Profile) -> String {
    let voters: Vec<String> = profile.voters().iter().map(|v| profile.format_order(v)).collect();
    match profile.tie() {
        TieRule::Deterministic(o) => format!("tie={} {}", profile.format_order(o), voters.join(" ")),
        TieRule::Uniform => voters.join(" "),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            file,
            format,
            path,
            no_memo,
        } => {
            let profile = load(&file)?;
            let result = solve_with(&profile, SolveOptions { memoize: !no_memo })?;
            let report = classify_paradoxes(&profile, result.outcome);
            print!(
                "{}",
                ensure_newline(format_report(&profile, &result, &report, format.into(), path))
            );
        }
        Command::Analyze { file, format } => {
            let profile = load(&file)?;
            let result = solve_with(&profile, SolveOptions::default())?;
            let report = classify_paradoxes(&profile, result.outcome);
            print!(
                "{}",
                ensure_newline(format_analysis(&profile, &result, &report, format.into()))
            );
        }
        Command::Search {
            voters,
            alts,
            rule,
            tie,
            paradox,
            limit,
            no_canonical,
            workers,
            format,
        } => {
            let spec = SearchSpec {
                voters,
                alts,
                rule: rule.into(),
                tie: parse_tie(&tie, alts)?,
                paradox,
                limit,
                canonical: !no_canonical,
            };
            let out = match workers {
                Some(w) => find_paradoxes_with_workers(&spec, w)?,
                None => find_paradoxes(&spec)?,
            };
            match format {
                Format::Json => {
                    let hits: Vec<_> = out
                        .hits
                        .iter()
                        .map(|h| {
                            json!({
                                "index": h.index,
                                "profile": serialize_profile(&h.profile),
                                "winners": h.outcome.members().iter().map(|a| h.profile.label(a)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let doc = json!({
                        "paradox": paradox.name(),
                        "profiles_scanned": out.profiles_scanned,
                        "exhausted": out.exhausted,
                        "hits": hits,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                }
                Format::Text => {
                    println!(
                        "{} hit(s) for {paradox}; scanned {} profile(s){}",
                        out.hits.len(),
                        out.profiles_scanned,
                        if out.exhausted { ", space exhausted" } else { "" }
                    );
                    for h in &out.hits {
                        println!(
                            "\n# profile {}: winners {}",
                            h.index,
                            h.profile.format_set(h.outcome.members())
                        );
                        print!("{}", serialize_profile(&h.profile));
                    }
                }
            }
        }
        Command::VerifyPaper => {
            let results = run_fixtures();
            let passed = results.iter().filter(|r| r.passed()).count();
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!("{status} {:<17} {:<6} {}", r.name, r.actual, r.source);
                for m in &r.mismatches {
                    println!("     {m}");
                }
            }
            println!("{passed}/{} fixtures pass", results.len());
            if passed != results.len() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Enumerate {
            voters,
            alts,
            canonical,
            tie,
            count,
        } => {
            let tie = parse_tie(&tie, alts)?;
            if voters == 0 || alts == 0 || alts > seqvote::model::MAX_ALTERNATIVES {
                return Err(Failure::Usage(anyhow!(
                    "need at least one voter and between 1 and 8 alternatives"
                )));
            }
            let space = ProfileSpace::new(voters, alts, VotingRule::Plurality, &tie, canonical)?;
            if count {
                println!("{}", space.len());
            } else {
                for p in space.iter() {
                    println!("{}", one_line(&p));
                }
            }
        }
    }
    Ok(())
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
