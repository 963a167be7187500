//! Exhaustive enumeration of preference profiles and paradox hunting.
//!
//! Profiles are addressed by an index in a mixed-radix space, one digit per
//! free voter (last voter fastest) and, for non-canonical deterministic
//! searches, a leading digit for the tie order. Canonical mode quotients out
//! relabeling of alternatives: the first voter's order is pinned under uniform
//! tie-breaking, the tie order is pinned under deterministic tie-breaking.
//! Voters are never permuted since speaking order matters.

use itertools::Itertools;
use rayon::prelude::*;

use crate::analysis::{classify_paradoxes, Paradox, ParadoxReport};
use crate::error::{Error, Result};
use crate::model::{
    default_labels, Alt, PreferenceOrder, Profile, TieRule, VotingRule, WinningSet, MAX_ALTERNATIVES, MAX_VOTERS,
};
use crate::solver::{state_bound, StateGraph};

/// Work budget for unlimited searches: profiles × states × ballots.
pub const SEARCH_BUDGET: u64 = 20_000_000_000;

const CHUNK: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TieSpec {
    Uniform,
    /// A fixed tie order, or every tie order when `None` (pinned to the
    /// identity order in canonical mode).
    Deterministic(Option<PreferenceOrder>),
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub voters: usize,
    pub alts: usize,
    pub rule: VotingRule,
    pub tie: TieSpec,
    pub paradox: Paradox,
    pub limit: Option<usize>,
    pub canonical: bool,
}

impl SearchSpec {
    pub fn new(voters: usize, alts: usize, rule: VotingRule, tie: TieSpec, paradox: Paradox) -> Self {
        SearchSpec {
            voters,
            alts,
            rule,
            tie,
            paradox,
            limit: None,
            canonical: true,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn non_canonical(mut self) -> Self {
        self.canonical = false;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.alts == 0 || self.alts > MAX_ALTERNATIVES {
            return Err(Error::AlternativeCount {
                got: self.alts,
                max: MAX_ALTERNATIVES,
            });
        }
        if self.voters == 0 || self.voters > MAX_VOTERS {
            return Err(Error::VoterCount {
                got: self.voters,
                max: MAX_VOTERS,
            });
        }
        if self.limit == Some(0) {
            return Err(Error::TooLarge("search limit must be at least 1".into()));
        }
        if let TieSpec::Deterministic(Some(order)) = &self.tie {
            if order.len() != self.alts {
                return Err(Error::InvalidRanking { expected: self.alts });
            }
        }
        Ok(())
    }
}

/// A profile exhibiting the requested paradox, with its position in the space.
#[derive(Clone, Debug)]
pub struct Hit {
    pub index: u64,
    pub profile: Profile,
    pub outcome: WinningSet,
    pub report: ParadoxReport,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub hits: Vec<Hit>,
    pub exhausted: bool,
    pub profiles_scanned: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Absence {
    pub holds: bool,
    pub profiles_scanned: u64,
}

/// All strict orders over `m` alternatives in lexicographic order.
pub fn all_orders(m: usize) -> Vec<PreferenceOrder> {
    (0..m)
        .permutations(m)
        .map(|p| PreferenceOrder::from_indices(&p).expect("permutation"))
        .collect()
}

/// An indexable space of profiles sharing `(n, m, rule)`.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    n: usize,
    m: usize,
    rule: VotingRule,
    orders: Vec<PreferenceOrder>,
    ties: Vec<TieRule>,
    pin_first_voter: bool,
    per_tie: u64,
}

impl ProfileSpace {
    pub fn new(n: usize, m: usize, rule: VotingRule, tie: &TieSpec, canonical: bool) -> Result<Self> {
        let orders = all_orders(m);
        let ties = match (tie, canonical) {
            (TieSpec::Uniform, _) => vec![TieRule::Uniform],
            (TieSpec::Deterministic(Some(o)), _) => vec![TieRule::Deterministic(o.clone())],
            (TieSpec::Deterministic(None), true) => vec![TieRule::Deterministic(PreferenceOrder::identity(m))],
            (TieSpec::Deterministic(None), false) => orders.iter().cloned().map(TieRule::Deterministic).collect(),
        };
        let pin_first_voter = canonical && *tie == TieSpec::Uniform;
        let free = n - usize::from(pin_first_voter);
        let per_tie = (orders.len() as u64)
            .checked_pow(free as u32)
            .filter(|p| p.checked_mul(ties.len() as u64).is_some())
            .ok_or_else(|| Error::TooLarge(format!("({m}!)^{free} profiles overflow the index space")))?;
        Ok(ProfileSpace {
            n,
            m,
            rule,
            orders,
            ties,
            pin_first_voter,
            per_tie,
        })
    }

    pub fn for_spec(spec: &SearchSpec) -> Result<Self> {
        spec.validate()?;
        Self::new(spec.voters, spec.alts, spec.rule, &spec.tie, spec.canonical)
    }

    pub fn len(&self) -> u64 {
        self.per_tie * self.ties.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The profile at `index`; panics when out of range.
    pub fn profile(&self, index: u64) -> Profile {
        assert!(index < self.len(), "profile index out of range");
        let tie = self.ties[(index / self.per_tie) as usize].clone();
        let mut rest = index % self.per_tie;
        let radix = self.orders.len() as u64;
        let mut voters = vec![PreferenceOrder::identity(self.m); self.n];
        let first_free = usize::from(self.pin_first_voter);
        for slot in voters[first_free..].iter_mut().rev() {
            *slot = self.orders[(rest % radix) as usize].clone();
            rest /= radix;
        }
        Profile::new(default_labels(self.m), voters, self.rule, tie).expect("enumerated profiles are valid")
    }

    /// Position of `profile` in this space (labels ignored), if it belongs to it.
    pub fn index_of(&self, profile: &Profile) -> Option<u64> {
        if profile.num_voters() != self.n || profile.num_alternatives() != self.m || profile.rule() != self.rule {
            return None;
        }
        let tie_idx = self.ties.iter().position(|t| t == profile.tie())? as u64;
        let voters = profile.voters();
        if self.pin_first_voter && voters[0] != PreferenceOrder::identity(self.m) {
            return None;
        }
        let radix = self.orders.len() as u64;
        let mut rest = 0u64;
        for v in &voters[usize::from(self.pin_first_voter)..] {
            rest = rest * radix + self.orders.iter().position(|o| o == v)? as u64;
        }
        Some(tie_idx * self.per_tie + rest)
    }

    pub fn iter(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.len()).map(move |i| self.profile(i))
    }
}

/// The space of profiles described by `spec`.
pub fn enumerate_profiles(spec: &SearchSpec) -> Result<ProfileSpace> {
    ProfileSpace::for_spec(spec)
}

/// Renumbers alternatives: old alternative `a` becomes `perm[a]`. Labels
/// travel with their alternatives.
pub fn relabel(profile: &Profile, perm: &[Alt]) -> Profile {
    let m = profile.num_alternatives();
    assert_eq!(perm.len(), m, "permutation length");
    let map = |o: &PreferenceOrder| {
        PreferenceOrder::new(o.ranking().iter().map(|a| perm[a.index()]).collect()).expect("relabeled order")
    };
    let mut labels = vec![String::new(); m];
    for a in profile.alternatives() {
        labels[perm[a.index()].index()] = profile.label(a).to_string();
    }
    let tie = match profile.tie() {
        TieRule::Uniform => TieRule::Uniform,
        TieRule::Deterministic(o) => TieRule::Deterministic(map(o)),
    };
    Profile::new(labels, profile.voters().iter().map(map).collect(), profile.rule(), tie).expect("relabeled profile")
}

/// Relabels `profile` into the canonical space: the tie order (deterministic)
/// or the first voter's order (uniform) becomes the identity order. Returns
/// the canonical profile and the permutation applied.
pub fn canonicalize(profile: &Profile) -> (Profile, Vec<Alt>) {
    let pinned = match profile.tie() {
        TieRule::Deterministic(o) => o,
        TieRule::Uniform => &profile.voters()[0],
    };
    let mut perm = vec![Alt(0); profile.num_alternatives()];
    for (rank, a) in pinned.ranking().iter().enumerate() {
        perm[a.index()] = Alt(rank as u8);
    }
    (relabel(profile, &perm), perm)
}

/// Solves every profile of the space, keeping those that exhibit
/// `spec.paradox`. With a limit, the first hits in enumeration order are
/// returned regardless of parallelism.
pub fn find_paradoxes(spec: &SearchSpec) -> Result<SearchOutcome> {
    let space = ProfileSpace::for_spec(spec)?;
    let graph = StateGraph::new(spec.rule, spec.alts, spec.voters)?;
    if spec.limit.is_none() {
        let per_solve = state_bound(spec.voters, spec.alts).saturating_mul(graph_ballots(spec) as u64);
        let cost = space.len().saturating_mul(per_solve);
        if cost > SEARCH_BUDGET {
            return Err(Error::TooLarge(format!(
                "{} profiles at ~{per_solve} steps each exceed the search budget of {SEARCH_BUDGET}; pass a limit",
                space.len()
            )));
        }
    }

    let total = space.len();
    let chunks = total.div_ceil(CHUNK);
    let round = (rayon::current_num_threads() as u64 * 4).max(1);
    let scan = |c: u64| -> Vec<Hit> {
        let mut found = Vec::new();
        for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let profile = space.profile(index);
            let outcome = graph.solve(&profile).outcome;
            let report = classify_paradoxes(&profile, outcome);
            if report.flags.get(spec.paradox) {
                found.push(Hit {
                    index,
                    profile,
                    outcome,
                    report,
                });
                if spec.limit.is_some_and(|l| found.len() >= l) {
                    break;
                }
            }
        }
        found
    };

    let mut hits = Vec::new();
    let mut start = 0;
    while start < chunks {
        let end = (start + round).min(chunks);
        let batches: Vec<Vec<Hit>> = (start..end).into_par_iter().map(scan).collect();
        for batch in batches {
            hits.extend(batch);
            if let Some(limit) = spec.limit {
                if hits.len() >= limit {
                    hits.truncate(limit);
                    let scanned = hits.last().map_or(total, |h| h.index + 1);
                    return Ok(SearchOutcome {
                        hits,
                        exhausted: scanned == total,
                        profiles_scanned: scanned,
                    });
                }
            }
        }
        start = end;
    }
    Ok(SearchOutcome {
        hits,
        exhausted: true,
        profiles_scanned: total,
    })
}

fn graph_ballots(spec: &SearchSpec) -> usize {
    match spec.rule {
        VotingRule::Plurality => spec.alts + 1,
        VotingRule::Approval => 1 << spec.alts,
    }
}

/// Runs [`find_paradoxes`] on a dedicated pool of `workers` threads.
pub fn find_paradoxes_with_workers(spec: &SearchSpec, workers: usize) -> Result<SearchOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::TooLarge(format!("cannot start worker pool: {e}")))?;
    pool.install(|| find_paradoxes(spec))
}

/// Certifies that no canonical profile of the given shape exhibits the paradox.
pub fn verify_absence(spec: &SearchSpec) -> Result<Absence> {
    let spec = SearchSpec {
        limit: None,
        canonical: true,
        ..spec.clone()
    };
    let out = find_paradoxes(&spec)?;
    Ok(Absence {
        holds: out.hits.is_empty() && out.exhausted,
        profiles_scanned: out.profiles_scanned,
    })
}
