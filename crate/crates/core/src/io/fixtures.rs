//! Published example elections with their stated equilibrium outcomes.
//!
//! Only outcomes and paradox flags are checked. Equilibrium ballots are not
//! unique, so the circled ballots of the source tables are not compared.

use crate::analysis::{classify_paradoxes, Paradox};
use crate::io::parse::parse_profile;
use crate::model::{AltSet, Profile};
use crate::solver::spe_outcome;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub document: &'static str,
    pub expected_winners: &'static [&'static str],
    /// Flags stated for this election; flags not listed are not asserted.
    pub expected_flags: &'static [(Paradox, bool)],
}

impl Fixture {
    pub fn profile(&self) -> Profile {
        parse_profile(self.document).unwrap_or_else(|e| panic!("fixture {}: {e}", self.name))
    }

    pub fn expected_set(&self, profile: &Profile) -> AltSet {
        self.expected_winners
            .iter()
            .map(|l| {
                profile
                    .alt_by_label(l)
                    .unwrap_or_else(|| panic!("fixture {}: unknown label {l}", self.name))
            })
            .collect()
    }
}

use Paradox::*;

const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "t1-uniform",
        source: "five voters with uniform tie-breaking",
        document: "rule=plurality\ntie=uniform\nalts=A,B,C\nC>A>B\nA>C>B\nA>C>B\nB>A>C\nC>B>A\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetWinner, true)],
    },
    Fixture {
        name: "t1-deterministic",
        source: "four voters with the last row as tie-breaker",
        document: "rule=plurality\ntie=deterministic:C>B>A\nalts=A,B,C\nC>A>B\nA>C>B\nA>C>B\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetWinner, true)],
    },
    Fixture {
        name: "t2",
        source: "plurality with deterministic tie-breaking",
        document: "rule=plurality\ntie=deterministic:C>B>A\nalts=A,B,C\nA>C>B\nC>B>A\nB>C>A\nA>B>C\nA>B>C\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetLoser, true)],
    },
    Fixture {
        name: "t3",
        source: "plurality with uniform tie-breaking",
        document: "rule=plurality\ntie=uniform\nalts=A,B,C\nA>C>B\nC>B>A\nB>C>A\nA>B>C\nA>B>C\nC>B>A\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetLoser, true)],
    },
    Fixture {
        name: "t4",
        source: "approval with deterministic tie-breaking",
        document: "rule=approval\ntie=deterministic:B>C>A\nalts=A,B,C\nC>A>B\nA>C>B\nA>C>B\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetWinner, true)],
    },
    Fixture {
        name: "t5",
        source: "approval with uniform tie-breaking",
        document: "rule=approval\ntie=uniform\nalts=A,B,C\nC>A>B\nC>A>B\nA>C>B\nA>C>B\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetWinner, true)],
    },
    Fixture {
        name: "t6",
        source: "approval with deterministic tie-breaking",
        document: "rule=approval\ntie=deterministic:C>A>B\nalts=A,B,C\nB>C>A\nB>C>A\nA>C>B\nA>C>B\nB>A>C\nA>B>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetLoser, true)],
    },
    Fixture {
        name: "t7",
        source: "approval with uniform tie-breaking",
        document: "rule=approval\ntie=uniform\nalts=A,B,C\nB>C>A\nB>C>A\nA>B>C\nC>A>B\nA>C>B\nA>C>B\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(CondorcetLoser, true)],
    },
    Fixture {
        name: "t8",
        source: "approval with deterministic tie-breaking, four alternatives",
        document:
            "rule=approval\ntie=deterministic:D>A>B>C\nalts=A,B,C,D\nA>C>B>D\nA>C>B>D\nD>A>C>B\nD>A>C>B\nB>D>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(ParetoWeak, true), (ParetoStrong, true)],
    },
    Fixture {
        name: "t9",
        source: "plurality with uniform tie-breaking, four alternatives",
        document: "rule=plurality\ntie=uniform\nalts=A,B,C,D\nA>B>D>C\nD>A>C>B\nD>C>B>A\nA>B>D>C\nB>A>D>C\nB>D>A>C\n",
        expected_winners: &["A", "C"],
        expected_flags: &[(ParetoWeak, true), (ParetoStrong, false)],
    },
    Fixture {
        name: "t10",
        source: "approval with uniform tie-breaking, four alternatives",
        document: "rule=approval\ntie=uniform\nalts=A,B,C,D\nA>B>D>C\nD>C>B>A\nD>C>A>B\nB>D>C>A\nA>B>D>C\nB>D>A>C\n",
        expected_winners: &["A", "C"],
        expected_flags: &[(ParetoWeak, true), (ParetoStrong, false)],
    },
    Fixture {
        name: "two-voter",
        source: "two-voter plurality example with tie order C>B>A",
        document: "rule=plurality\ntie=deterministic:C>B>A\nalts=A,B,C\nA>C>B\nB>A>C\n",
        expected_winners: &["C"],
        expected_flags: &[(ParetoWeak, true), (ParetoStrong, true)],
    },
];

pub fn fixtures() -> &'static [Fixture] {
    FIXTURES
}

#[derive(Clone, Debug)]
pub struct FixtureResult {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: String,
    pub actual: String,
    /// One entry per disagreement; empty when the fixture passes.
    pub mismatches: Vec<String>,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn run_fixture(fixture: &Fixture) -> FixtureResult {
    let profile = fixture.profile();
    let outcome = spe_outcome(&profile);
    let report = classify_paradoxes(&profile, outcome);
    let expected = fixture.expected_set(&profile);
    let mut mismatches = Vec::new();
    if outcome.members() != expected {
        mismatches.push(format!(
            "winning set: expected {}, got {}",
            profile.format_set(expected),
            profile.format_set(outcome.members())
        ));
    }
    for (paradox, want) in fixture.expected_flags {
        let got = report.flags.get(*paradox);
        if got != *want {
            mismatches.push(format!("{paradox}: expected {want}, got {got}"));
        }
    }
    FixtureResult {
        name: fixture.name,
        source: fixture.source,
        expected: profile.format_set(expected),
        actual: profile.format_set(outcome.members()),
        mismatches,
    }
}

/// Solves every embedded fixture and checks outcome and stated flags.
pub fn run_fixtures() -> Vec<FixtureResult> {
    FIXTURES.iter().map(run_fixture).collect()
}
