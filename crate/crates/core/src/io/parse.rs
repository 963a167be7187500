//! Line-oriented profile documents.
//!
//! ```text
//! rule=plurality
//! tie=deterministic:C>B>A
//! alts=A,B,C
//! A>C>B      # one voter per line, in speaking order
//! B>A>C
//! ```

use thiserror::Error;

use crate::model::{Alt, PreferenceOrder, Profile, TieRule, VotingRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn header<'a>(line: Option<(usize, &'a str)>, key: &str, eof: usize) -> Result<(usize, &'a str), ParseError> {
    let Some((no, text)) = line else {
        return err(eof, format!("missing `{key}=` line"));
    };
    match text.split_once('=') {
        Some((k, v)) if k.trim() == key => Ok((no, v.trim())),
        _ => err(no, format!("expected `{key}=...`, found `{text}`")),
    }
}

fn ranking(text: &str, labels: &[String], line: usize) -> Result<PreferenceOrder, ParseError> {
    let mut seen = vec![false; labels.len()];
    let mut ranking = Vec::with_capacity(labels.len());
    for token in text.split('>').map(str::trim) {
        if !valid_label(token) {
            return err(line, format!("invalid label `{token}`"));
        }
        let Some(i) = labels.iter().position(|l| l == token) else {
            return err(line, format!("unknown alternative `{token}`"));
        };
        if seen[i] {
            return err(line, format!("duplicate alternative `{token}`"));
        }
        seen[i] = true;
        ranking.push(Alt(i as u8));
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return err(
            line,
            format!(
                "missing alternative `{}` (expected {} alternatives, got {})",
                labels[i],
                labels.len(),
                ranking.len()
            ),
        );
    }
    PreferenceOrder::new(ranking).or_else(|e| err(line, e.to_string()))
}

/// Parses a profile document. Voters keep their file order.
pub fn parse_profile(doc: &str) -> Result<Profile, ParseError> {
    let mut lines = doc
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let eof = doc.lines().count() + 1;

    let (rule_line, rule) = header(lines.next(), "rule", eof)?;
    let rule = match rule {
        "plurality" => VotingRule::Plurality,
        "approval" => VotingRule::Approval,
        other => return err(rule_line, format!("unknown rule `{other}`")),
    };

    let (tie_line, tie) = header(lines.next(), "tie", eof)?;
    let tie_order = match tie.split_once(':') {
        None if tie == "uniform" => None,
        Some((kind, order)) if kind.trim() == "deterministic" => Some(order.trim()),
        _ => return err(tie_line, format!("unknown tie rule `{tie}`")),
    };

    let (alts_line, alts) = header(lines.next(), "alts", eof)?;
    let labels: Vec<String> = alts.split(',').map(|s| s.trim().to_string()).collect();
    for (i, l) in labels.iter().enumerate() {
        if !valid_label(l) {
            return err(alts_line, format!("invalid label `{l}`"));
        }
        if labels[..i].contains(l) {
            return err(alts_line, format!("duplicate alternative `{l}`"));
        }
    }

    let tie = match tie_order {
        None => TieRule::Uniform,
        Some(order) => TieRule::Deterministic(ranking(order, &labels, tie_line)?),
    };

    let mut voters = Vec::new();
    let mut last = alts_line;
    for (no, text) in lines {
        voters.push(ranking(text, &labels, no)?);
        last = no;
    }
    if voters.is_empty() {
        return err(eof, "profile has no voters");
    }
    Profile::new(labels, voters, rule, tie).or_else(|e| err(last, e.to_string()))
}

/// Canonical document for `profile`; parsing it back yields the same profile.
pub fn serialize_profile(profile: &Profile) -> String {
    let rule = match profile.rule() {
        VotingRule::Plurality => "plurality",
        VotingRule::Approval => "approval",
    };
    let tie = match profile.tie() {
        TieRule::Uniform => "uniform".to_string(),
        TieRule::Deterministic(o) => format!("deterministic:{}", profile.format_order(o)),
    };
    let mut out = format!("rule={rule}\ntie={tie}\nalts={}\n", profile.labels().join(","));
    for v in profile.voters() {
        out.push_str(&profile.format_order(v));
        out.push('\n');
    }
    out
}
