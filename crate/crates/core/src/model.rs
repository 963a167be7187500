//! Election domain: alternatives, strict preference orders, ballots, tallies,
//! winning sets and the lifted order that voters use to compare winning sets.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of alternatives. Tallies are packed eight bits per
/// alternative into a `u64` by the solver.
pub const MAX_ALTERNATIVES: usize = 8;

/// Largest supported number of voters (a single packed count must fit in a byte).
pub const MAX_VOTERS: usize = 255;

/// Index of an alternative inside a [`Profile`]. Labels live on the profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alt(pub u8);

impl Alt {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A subset of alternatives stored as a bitmask; bit `i` is alternative `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AltSet(u16);

impl AltSet {
    pub const EMPTY: AltSet = AltSet(0);

    pub fn from_bits(bits: u16) -> Self {
        AltSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The set of all `m` alternatives.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_ALTERNATIVES);
        AltSet(((1u32 << m) - 1) as u16)
    }

    pub fn singleton(a: Alt) -> Self {
        AltSet(1 << a.0)
    }

    pub fn contains(self, a: Alt) -> bool {
        self.0 & (1 << a.0) != 0
    }

    pub fn with(self, a: Alt) -> Self {
        AltSet(self.0 | (1 << a.0))
    }

    pub fn without(self, a: Alt) -> Self {
        AltSet(self.0 & !(1 << a.0))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: AltSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = Alt> {
        let bits = self.0;
        (0..16u8).filter(move |i| bits & (1 << i) != 0).map(Alt)
    }
}

impl FromIterator<Alt> for AltSet {
    fn from_iter<I: IntoIterator<Item = Alt>>(iter: I) -> Self {
        iter.into_iter().fold(AltSet::EMPTY, AltSet::with)
    }
}

impl fmt::Debug for AltSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

/// One voter's strict total order over all alternatives, most preferred first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PreferenceOrder {
    ranking: Vec<Alt>,
    position: [u8; MAX_ALTERNATIVES],
}

impl PreferenceOrder {
    /// Builds an order from a ranking, which must be a permutation of `0..ranking.len()`.
    pub fn new(ranking: Vec<Alt>) -> Result<Self> {
        let m = ranking.len();
        if m == 0 || m > MAX_ALTERNATIVES {
            return Err(Error::AlternativeCount {
                got: m,
                max: MAX_ALTERNATIVES,
            });
        }
        let mut position = [u8::MAX; MAX_ALTERNATIVES];
        for (rank, a) in ranking.iter().enumerate() {
            if a.index() >= m || position[a.index()] != u8::MAX {
                return Err(Error::InvalidRanking { expected: m });
            }
            position[a.index()] = rank as u8;
        }
        Ok(PreferenceOrder { ranking, position })
    }

    /// Builds an order from plain indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let m = indices.len();
        let ranking = indices
            .iter()
            .map(|&i| {
                if i < m {
                    Ok(Alt(i as u8))
                } else {
                    Err(Error::InvalidRanking { expected: m })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ranking)
    }

    /// The order `0 > 1 > ... > m-1`.
    pub fn identity(m: usize) -> Self {
        Self::new((0..m as u8).map(Alt).collect()).expect("identity is a permutation")
    }

    pub fn ranking(&self) -> &[Alt] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// Zero-based rank of `a` (0 = favourite).
    pub fn rank(&self, a: Alt) -> usize {
        self.position[a.index()] as usize
    }

    /// True when `a` is ranked strictly above `b`.
    pub fn prefers(&self, a: Alt, b: Alt) -> bool {
        self.rank(a) < self.rank(b)
    }

    pub fn favourite(&self) -> Alt {
        self.ranking[0]
    }

    pub fn least_favourite(&self) -> Alt {
        self.ranking[self.ranking.len() - 1]
    }
}

impl fmt::Debug for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranking.iter().map(|a| a.0.to_string()).collect();
        write!(f, "{}", parts.join(">"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VotingRule {
    /// At most one approved alternative per ballot; the empty ballot abstains.
    Plurality,
    /// Any subset of the alternatives.
    Approval,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TieRule {
    /// The highest alternative of this order among the tied ones wins alone.
    Deterministic(PreferenceOrder),
    /// Every alternative with the maximum count is in the winning set.
    Uniform,
}

impl TieRule {
    pub fn is_deterministic(&self) -> bool {
        matches!(self, TieRule::Deterministic(_))
    }
}

/// A cast vote: the set of approved alternatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ballot(pub AltSet);

impl Ballot {
    pub const ABSTAIN: Ballot = Ballot(AltSet::EMPTY);

    pub fn approved(self) -> AltSet {
        self.0
    }
}

/// Vote counts so far and the index of the voter about to move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TallyState {
    pub counts: Vec<u32>,
    pub next: usize,
}

impl TallyState {
    pub fn zero(m: usize) -> Self {
        TallyState {
            counts: vec![0; m],
            next: 0,
        }
    }
}

/// Nonempty set of alternatives that an election ends with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WinningSet(AltSet);

impl WinningSet {
    pub fn new(set: AltSet) -> Result<Self> {
        if set.is_empty() {
            Err(Error::EmptySubset)
        } else {
            Ok(WinningSet(set))
        }
    }

    pub fn members(self) -> AltSet {
        self.0
    }

    pub fn contains(self, a: Alt) -> bool {
        self.0.contains(a)
    }

    /// The single winner, if the set is a singleton.
    pub fn lone(self) -> Option<Alt> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }
}

/// The most preferred member of `set` under `order`.
pub fn top(order: &PreferenceOrder, set: AltSet) -> Result<Alt> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    check_within(order, set)?;
    Ok(*order
        .ranking
        .iter()
        .find(|a| set.contains(**a))
        .expect("nonempty subset of ranked alternatives"))
}

fn check_within(order: &PreferenceOrder, set: AltSet) -> Result<()> {
    match set.iter().find(|a| a.index() >= order.len()) {
        Some(a) => Err(Error::UnknownAlternative(a.index())),
        None => Ok(()),
    }
}

/// Compares two nonempty sets under the order lifted from `order`.
/// `Greater` means `s1` is preferred.
///
/// Better top element wins; with equal tops the smaller set wins; with equal
/// tops and sizes the common top is removed from both and the comparison repeats.
pub fn lifted_compare(order: &PreferenceOrder, s1: AltSet, s2: AltSet) -> Result<Ordering> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptySubset);
    }
    let (mut a, mut b) = (s1, s2);
    loop {
        let ta = top(order, a)?;
        let tb = top(order, b)?;
        if ta != tb {
            return Ok(order.rank(tb).cmp(&order.rank(ta)));
        }
        match a.len().cmp(&b.len()) {
            Ordering::Less => return Ok(Ordering::Greater),
            Ordering::Greater => return Ok(Ordering::Less),
            Ordering::Equal => {}
        }
        a = a.without(ta);
        b = b.without(ta);
        if a.is_empty() {
            return Ok(Ordering::Equal);
        }
    }
}

/// Every nonempty subset of `m` alternatives scored so that a higher score is
/// a more preferred set under the lifted order. Precomputed once per voter.
#[derive(Clone, Debug)]
pub struct LiftedRanking {
    score: Vec<u16>,
}

impl LiftedRanking {
    pub fn new(order: &PreferenceOrder) -> Self {
        let m = order.len();
        let mut sets: Vec<AltSet> = (1..1u16 << m).map(AltSet::from_bits).collect();
        sets.sort_by(|a, b| lifted_compare(order, *a, *b).expect("nonempty subsets"));
        let mut score = vec![0u16; 1 << m];
        for (i, s) in sets.iter().enumerate() {
            score[s.bits() as usize] = i as u16 + 1;
        }
        LiftedRanking { score }
    }

    /// Rank of `set` among all nonempty subsets, 1 = least preferred.
    pub fn score(&self, set: AltSet) -> u16 {
        self.score[set.bits() as usize]
    }
}

/// Every legal ballot for `rule` over `m` alternatives, in canonical order:
/// by cardinality, then lexicographically on sorted indices. Abstention first.
pub fn legal_ballots(rule: VotingRule, m: usize) -> Vec<Ballot> {
    let mut sets: Vec<AltSet> = match rule {
        VotingRule::Plurality => std::iter::once(AltSet::EMPTY)
            .chain((0..m as u8).map(|a| AltSet::singleton(Alt(a))))
            .collect(),
        VotingRule::Approval => (0..1u16 << m).map(AltSet::from_bits).collect(),
    };
    sets.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    sets.into_iter().map(Ballot).collect()
}

/// Alternatives with the maximum count, resolved by the tie rule.
pub fn winning_set(counts: &[u32], tie: &TieRule) -> WinningSet {
    assert!(!counts.is_empty(), "at least one alternative");
    let max = *counts.iter().max().expect("nonempty");
    let leaders: AltSet = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == max)
        .map(|(i, _)| Alt(i as u8))
        .collect();
    match tie {
        TieRule::Uniform => WinningSet(leaders),
        TieRule::Deterministic(order) => WinningSet(AltSet::singleton(
            top(order, leaders).expect("tie order covers every alternative"),
        )),
    }
}

/// Default labels `A`, `B`, `C`, ... for `m` alternatives.
pub fn default_labels(m: usize) -> Vec<String> {
    (0..m).map(|i| char::from(b'A' + i as u8).to_string()).collect()
}

/// A complete sequential election: alternatives, voters in speaking order,
/// voting rule and tie rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    labels: Vec<String>,
    voters: Vec<PreferenceOrder>,
    rule: VotingRule,
    tie: TieRule,
}

impl Profile {
    pub fn new(labels: Vec<String>, voters: Vec<PreferenceOrder>, rule: VotingRule, tie: TieRule) -> Result<Self> {
        let m = labels.len();
        if m == 0 || m > MAX_ALTERNATIVES {
            return Err(Error::AlternativeCount {
                got: m,
                max: MAX_ALTERNATIVES,
            });
        }
        if voters.is_empty() || voters.len() > MAX_VOTERS {
            return Err(Error::VoterCount {
                got: voters.len(),
                max: MAX_VOTERS,
            });
        }
        if labels.iter().any(|l| l.is_empty()) || (1..m).any(|i| labels[..i].contains(&labels[i])) {
            return Err(Error::InvalidLabels);
        }
        if voters.iter().any(|v| v.len() != m) {
            return Err(Error::InvalidRanking { expected: m });
        }
        if let TieRule::Deterministic(order) = &tie {
            if order.len() != m {
                return Err(Error::InvalidRanking { expected: m });
            }
        }
        Ok(Profile {
            labels,
            voters,
            rule,
            tie,
        })
    }

    /// A profile over alternatives labelled `A`, `B`, ...
    pub fn with_default_labels(voters: Vec<PreferenceOrder>, rule: VotingRule, tie: TieRule) -> Result<Self> {
        let m = voters.first().map_or(0, PreferenceOrder::len);
        Self::new(default_labels(m), voters, rule, tie)
    }

    pub fn num_alternatives(&self) -> usize {
        self.labels.len()
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn alternatives(&self) -> impl Iterator<Item = Alt> {
        (0..self.labels.len() as u8).map(Alt)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Alt) -> &str {
        &self.labels[a.index()]
    }

    pub fn alt_by_label(&self, label: &str) -> Option<Alt> {
        self.labels.iter().position(|l| l == label).map(|i| Alt(i as u8))
    }

    pub fn voters(&self) -> &[PreferenceOrder] {
        &self.voters
    }

    pub fn rule(&self) -> VotingRule {
        self.rule
    }

    pub fn tie(&self) -> &TieRule {
        &self.tie
    }

    pub fn legal_ballots(&self) -> Vec<Ballot> {
        legal_ballots(self.rule, self.num_alternatives())
    }

    pub fn is_legal(&self, ballot: Ballot) -> bool {
        ballot.0.is_subset(AltSet::full(self.num_alternatives()))
            && (self.rule == VotingRule::Approval || ballot.0.len() <= 1)
    }

    /// Casts `ballot` as the next voter; the input state is left untouched.
    pub fn apply_ballot(&self, state: &TallyState, ballot: Ballot) -> Result<TallyState> {
        if state.next >= self.num_voters() {
            return Err(Error::TerminalState);
        }
        if !self.is_legal(ballot) {
            return Err(Error::IllegalBallot(self.format_set(ballot.0)));
        }
        let mut counts = state.counts.clone();
        for a in ballot.0.iter() {
            counts[a.index()] += 1;
        }
        Ok(TallyState {
            counts,
            next: state.next + 1,
        })
    }

    pub fn winning_set(&self, counts: &[u32]) -> WinningSet {
        winning_set(counts, &self.tie)
    }

    /// `{A,C}` style rendering with this profile's labels.
    pub fn format_set(&self, set: AltSet) -> String {
        let names: Vec<&str> = set
            .iter()
            .map(|a| self.labels.get(a.index()).map_or("?", String::as_str))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// `A>C>B` style rendering with this profile's labels.
    pub fn format_order(&self, order: &PreferenceOrder) -> String {
        let names: Vec<&str> = order.ranking().iter().map(|a| self.label(*a)).collect();
        names.join(">")
    }
}
