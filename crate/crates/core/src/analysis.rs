//! Pairwise-majority structure and paradox classification.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Alt, Profile, WinningSet};

/// The four undesirable outcomes checked against an equilibrium winning set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Paradox {
    /// A Condorcet winner exists and is not in the winning set.
    CondorcetWinner,
    /// A Condorcet loser is the lone winner.
    CondorcetLoser,
    /// A Pareto-dominated alternative is in the winning set.
    ParetoWeak,
    /// A Pareto-dominated alternative is the lone winner.
    ParetoStrong,
}

impl Paradox {
    pub const ALL: [Paradox; 4] = [
        Paradox::CondorcetWinner,
        Paradox::CondorcetLoser,
        Paradox::ParetoWeak,
        Paradox::ParetoStrong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Paradox::CondorcetWinner => "condorcet_winner",
            Paradox::CondorcetLoser => "condorcet_loser",
            Paradox::ParetoWeak => "pareto_weak",
            Paradox::ParetoStrong => "pareto_strong",
        }
    }
}

impl fmt::Display for Paradox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Paradox {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Paradox::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            format!(
                "unknown paradox `{s}` (expected one of condorcet_winner, condorcet_loser, pareto_weak, pareto_strong)"
            )
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParadoxFlags {
    pub condorcet_winner: bool,
    pub condorcet_loser: bool,
    pub pareto_weak: bool,
    pub pareto_strong: bool,
}

impl ParadoxFlags {
    pub fn get(&self, paradox: Paradox) -> bool {
        match paradox {
            Paradox::CondorcetWinner => self.condorcet_winner,
            Paradox::CondorcetLoser => self.condorcet_loser,
            Paradox::ParetoWeak => self.pareto_weak,
            Paradox::ParetoStrong => self.pareto_strong,
        }
    }

    pub fn any(&self) -> bool {
        Paradox::ALL.into_iter().any(|p| self.get(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadoxReport {
    pub condorcet_winner: Option<Alt>,
    pub condorcet_loser: Option<Alt>,
    /// `(dominator, dominated)` pairs, sorted.
    pub pareto_pairs: Vec<(Alt, Alt)>,
    pub flags: ParadoxFlags,
}

/// Voters ranking `a` above `b` minus voters ranking `b` above `a`.
pub fn pairwise_margin(profile: &Profile, a: Alt, b: Alt) -> Result<i64> {
    if a == b {
        return Err(Error::SameAlternative);
    }
    let m = profile.num_alternatives();
    for x in [a, b] {
        if x.index() >= m {
            return Err(Error::UnknownAlternative(x.index()));
        }
    }
    Ok(profile
        .voters()
        .iter()
        .map(|v| if v.prefers(a, b) { 1 } else { -1 })
        .sum())
}

/// Full margin matrix; the diagonal is zero.
pub fn margin_matrix(profile: &Profile) -> Vec<Vec<i64>> {
    let m = profile.num_alternatives();
    let mut out = vec![vec![0i64; m]; m];
    for a in profile.alternatives() {
        for b in profile.alternatives().filter(|b| *b != a) {
            out[a.index()][b.index()] = pairwise_margin(profile, a, b).expect("distinct alternatives");
        }
    }
    out
}

fn extreme(profile: &Profile, sign: i64) -> Option<Alt> {
    let margins = margin_matrix(profile);
    profile.alternatives().find(|a| {
        profile
            .alternatives()
            .filter(|b| b != a)
            .all(|b| margins[a.index()][b.index()] * sign > 0)
    })
}

/// The alternative beating every other one in pairwise majority, if any.
pub fn condorcet_winner(profile: &Profile) -> Option<Alt> {
    extreme(profile, 1)
}

/// The alternative losing to every other one in pairwise majority, if any.
pub fn condorcet_loser(profile: &Profile) -> Option<Alt> {
    extreme(profile, -1)
}

/// All `(x, y)` with every voter ranking `x` above `y`.
pub fn pareto_dominations(profile: &Profile) -> Vec<(Alt, Alt)> {
    let mut pairs = Vec::new();
    for x in profile.alternatives() {
        for y in profile.alternatives().filter(|y| *y != x) {
            if profile.voters().iter().all(|v| v.prefers(x, y)) {
                pairs.push((x, y));
            }
        }
    }
    pairs
}

pub fn classify_paradoxes(profile: &Profile, winning: WinningSet) -> ParadoxReport {
    let cw = condorcet_winner(profile);
    let cl = condorcet_loser(profile);
    let pareto_pairs = pareto_dominations(profile);
    let dominated = |a: Alt| pareto_pairs.iter().any(|(_, y)| *y == a);
    let lone = winning.lone();
    let flags = ParadoxFlags {
        condorcet_winner: cw.is_some_and(|w| !winning.contains(w)),
        condorcet_loser: cl.is_some_and(|l| lone == Some(l)),
        pareto_weak: winning.members().iter().any(dominated),
        pareto_strong: lone.is_some_and(dominated),
    };
    ParadoxReport {
        condorcet_winner: cw,
        condorcet_loser: cl,
        pareto_pairs,
        flags,
    }
}
