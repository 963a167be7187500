//! Backward induction for sequential elections.
//!
//! The continuation game after any prefix of ballots depends only on the
//! current counts and on who moves next, so the game tree collapses into a
//! layered graph of tally states. The graph depends on the voting rule and on
//! `(n, m)` alone; preferences and the tie rule only enter the backward pass,
//! which lets a search reuse one graph for many profiles.

use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::collections::hash_map::Entry;

use crate::error::{Error, Result};
use crate::model::{
    legal_ballots, lifted_compare, top, Alt, AltSet, Ballot, LiftedRanking, Profile, TallyState, TieRule, VotingRule,
    WinningSet, MAX_ALTERNATIVES, MAX_VOTERS,
};

/// Leaf budget for the unmemoized solvers: `branching^n` may not exceed this.
pub const NAIVE_LEAF_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub states_visited: u64,
    pub memo_hits: u64,
}

/// Equilibrium outcome together with one canonical equilibrium ballot sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: WinningSet,
    pub path: Vec<Ballot>,
    pub stats: SolveStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// When false, the solver recurses over tally states without a table.
    pub memoize: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { memoize: true }
    }
}

/// Upper bound on the number of tally states in an `n`-voter, `m`-alternative game.
pub fn state_bound(n: usize, m: usize) -> u64 {
    (0..=n as u64).fold(0u64, |acc, i| acc.saturating_add((i + 1).saturating_pow(m as u32)))
}

// Eight bits per alternative.
fn pack(counts: &[u32]) -> u64 {
    counts
        .iter()
        .enumerate()
        .fold(0, |acc, (i, c)| acc | (u64::from(*c) << (8 * i)))
}

fn unpack(packed: u64, m: usize, out: &mut [u32; MAX_ALTERNATIVES]) {
    for (i, slot) in out.iter_mut().enumerate().take(m) {
        *slot = ((packed >> (8 * i)) & 0xff) as u32;
    }
}

fn leaders(packed: u64, m: usize) -> AltSet {
    let mut counts = [0u32; MAX_ALTERNATIVES];
    unpack(packed, m, &mut counts);
    let max = counts[..m].iter().copied().max().unwrap_or(0);
    (0..m).filter(|&i| counts[i] == max).map(|i| Alt(i as u8)).collect()
}

fn resolve(leaders: AltSet, tie: &TieRule) -> AltSet {
    match tie {
        TieRule::Uniform => leaders,
        TieRule::Deterministic(order) => AltSet::singleton(top(order, leaders).expect("tie order covers leaders")),
    }
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if m == 0 || m > MAX_ALTERNATIVES {
        return Err(Error::AlternativeCount {
            got: m,
            max: MAX_ALTERNATIVES,
        });
    }
    if n == 0 || n > MAX_VOTERS {
        return Err(Error::VoterCount {
            got: n,
            max: MAX_VOTERS,
        });
    }
    Ok(())
}

/// Reachable tally states of a game, layer `i` holding the states in which
/// voter `i` is about to move, with child links for every legal ballot.
#[derive(Clone, Debug)]
pub struct StateGraph {
    rule: VotingRule,
    m: usize,
    n: usize,
    ballots: Vec<Ballot>,
    keys: Vec<Vec<u64>>,
    children: Vec<Vec<u32>>,
    terminal_leaders: Vec<AltSet>,
    stats: SolveStats,
}

impl StateGraph {
    pub fn new(rule: VotingRule, m: usize, n: usize) -> Result<Self> {
        check_shape(m, n)?;
        let ballots = legal_ballots(rule, m);
        let deltas: Vec<u64> = ballots
            .iter()
            .map(|b| b.approved().iter().fold(0u64, |acc, a| acc + (1u64 << (8 * a.index()))))
            .collect();

        let mut stats = SolveStats {
            states_visited: 1,
            memo_hits: 0,
        };
        let mut keys = vec![vec![0u64]];
        let mut children = Vec::with_capacity(n);
        for i in 0..n {
            let mut index: FxHashMap<u64, u32> = FxHashMap::default();
            let mut next_keys = Vec::new();
            let mut links = Vec::with_capacity(keys[i].len() * deltas.len());
            for &key in &keys[i] {
                for &d in &deltas {
                    let child = key + d;
                    let slot = match index.entry(child) {
                        Entry::Occupied(e) => {
                            stats.memo_hits += 1;
                            *e.get()
                        }
                        Entry::Vacant(e) => {
                            stats.states_visited += 1;
                            next_keys.push(child);
                            *e.insert(next_keys.len() as u32 - 1)
                        }
                    };
                    links.push(slot);
                }
            }
            keys.push(next_keys);
            children.push(links);
        }
        let terminal_leaders = keys[n].iter().map(|&k| leaders(k, m)).collect();
        Ok(StateGraph {
            rule,
            m,
            n,
            ballots,
            keys,
            children,
            terminal_leaders,
            stats,
        })
    }

    pub fn for_profile(profile: &Profile) -> Result<Self> {
        Self::new(profile.rule(), profile.num_alternatives(), profile.num_voters())
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn num_states(&self) -> usize {
        self.keys.iter().map(Vec::len).sum()
    }

    /// Backward induction over this graph for `profile`, which must have the
    /// graph's rule, alternative count and voter count.
    pub fn solve(&self, profile: &Profile) -> SolveResult {
        assert!(
            profile.rule() == self.rule && profile.num_alternatives() == self.m && profile.num_voters() == self.n,
            "profile shape does not match the state graph"
        );
        let k = self.ballots.len();
        let mut values: Vec<Vec<AltSet>> = vec![Vec::new(); self.n + 1];
        values[self.n] = self
            .terminal_leaders
            .iter()
            .map(|l| resolve(*l, profile.tie()))
            .collect();

        for i in (0..self.n).rev() {
            let ranking = LiftedRanking::new(&profile.voters()[i]);
            let next = &values[i + 1];
            let layer: Vec<AltSet> = self.children[i]
                .chunks_exact(k)
                .map(|links| {
                    links
                        .iter()
                        .map(|&c| next[c as usize])
                        .max_by_key(|v| ranking.score(*v))
                        .expect("at least one legal ballot")
                })
                .collect();
            values[i] = layer;
        }

        let mut path = Vec::with_capacity(self.n);
        let mut state = 0usize;
        for i in 0..self.n {
            let target = values[i][state];
            let links = &self.children[i][state * k..(state + 1) * k];
            let choice = links
                .iter()
                .position(|&c| values[i + 1][c as usize] == target)
                .expect("optimum is attained by some ballot");
            path.push(self.ballots[choice]);
            state = links[choice] as usize;
        }

        SolveResult {
            outcome: WinningSet::new(values[0][0]).expect("winning sets are nonempty"),
            path,
            stats: self.stats,
        }
    }
}

/// The subgame-perfect outcome of `profile`.
pub fn spe_outcome(profile: &Profile) -> WinningSet {
    spe_path(profile).outcome
}

/// The subgame-perfect outcome plus the canonical equilibrium ballot sequence:
/// every voter casts the first optimal ballot in canonical ballot order.
pub fn spe_path(profile: &Profile) -> SolveResult {
    StateGraph::for_profile(profile)
        .expect("valid profiles have a supported shape")
        .solve(profile)
}

pub fn solve_with(profile: &Profile, options: SolveOptions) -> Result<SolveResult> {
    if options.memoize {
        return Ok(spe_path(profile));
    }
    guard_leaves(profile)?;
    StatewiseRecursion::new(profile).solve()
}

fn guard_leaves(profile: &Profile) -> Result<()> {
    let branching = profile.legal_ballots().len() as u64;
    let leaves = branching
        .checked_pow(profile.num_voters() as u32)
        .filter(|l| *l <= NAIVE_LEAF_LIMIT);
    match leaves {
        Some(_) => Ok(()),
        None => Err(Error::TooLarge(format!(
            "{branching}^{} game-tree leaves exceed the limit of {NAIVE_LEAF_LIMIT}",
            profile.num_voters()
        ))),
    }
}

/// Same packed-state encoding as [`StateGraph`], but every node is recomputed.
struct StatewiseRecursion<'a> {
    profile: &'a Profile,
    ballots: Vec<Ballot>,
    deltas: Vec<u64>,
    rankings: Vec<LiftedRanking>,
    stats: SolveStats,
}

impl<'a> StatewiseRecursion<'a> {
    fn new(profile: &'a Profile) -> Self {
        let ballots = profile.legal_ballots();
        let deltas = ballots
            .iter()
            .map(|b| pack(&counts_of(b.approved(), profile.num_alternatives())))
            .collect();
        let rankings = profile.voters().iter().map(LiftedRanking::new).collect();
        StatewiseRecursion {
            profile,
            ballots,
            deltas,
            rankings,
            stats: SolveStats::default(),
        }
    }

    fn value(&mut self, packed: u64, next: usize) -> AltSet {
        self.stats.states_visited += 1;
        if next == self.profile.num_voters() {
            return resolve(leaders(packed, self.profile.num_alternatives()), self.profile.tie());
        }
        let mut best: Option<AltSet> = None;
        for j in 0..self.deltas.len() {
            let v = self.value(packed + self.deltas[j], next + 1);
            let ranking = &self.rankings[next];
            if best.is_none_or(|b| ranking.score(v) > ranking.score(b)) {
                best = Some(v);
            }
        }
        best.expect("at least one legal ballot")
    }

    fn solve(mut self) -> Result<SolveResult> {
        let outcome = self.value(0, 0);
        let mut path = Vec::with_capacity(self.profile.num_voters());
        let mut state = 0u64;
        for i in 0..self.profile.num_voters() {
            let target = self.value(state, i);
            let j = (0..self.deltas.len())
                .find(|&j| self.value(state + self.deltas[j], i + 1) == target)
                .expect("optimum is attained by some ballot");
            path.push(self.ballots[j]);
            state += self.deltas[j];
        }
        Ok(SolveResult {
            outcome: WinningSet::new(outcome)?,
            path,
            stats: self.stats,
        })
    }
}

fn counts_of(set: AltSet, m: usize) -> Vec<u32> {
    (0..m).map(|i| u32::from(set.contains(Alt(i as u8)))).collect()
}

/// Reference solver: full recursion over ballot histories with no state
/// merging. Leaves are scored by replaying the history through
/// [`Profile::apply_ballot`], and voters compare outcomes with
/// [`lifted_compare`] directly.
pub fn naive_outcome(profile: &Profile) -> Result<WinningSet> {
    guard_leaves(profile)?;
    let ballots = profile.legal_ballots();
    let mut history = Vec::with_capacity(profile.num_voters());
    naive_value(profile, &ballots, &mut history)
}

fn naive_value(profile: &Profile, ballots: &[Ballot], history: &mut Vec<Ballot>) -> Result<WinningSet> {
    let i = history.len();
    if i == profile.num_voters() {
        let mut state = TallyState::zero(profile.num_alternatives());
        for b in history.iter() {
            state = profile.apply_ballot(&state, *b)?;
        }
        return Ok(profile.winning_set(&state.counts));
    }
    let voter = &profile.voters()[i];
    let mut best: Option<WinningSet> = None;
    for b in ballots {
        history.push(*b);
        let w = naive_value(profile, ballots, history)?;
        history.pop();
        let better = match best {
            None => true,
            Some(cur) => lifted_compare(voter, w.members(), cur.members())? == Ordering::Greater,
        };
        if better {
            best = Some(w);
        }
    }
    Ok(best.expect("at least one legal ballot"))
}
