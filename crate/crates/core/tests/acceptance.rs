//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqvote::analysis::{classify_paradoxes, Paradox};
use seqvote::io::run_fixtures;
use seqvote::model::{lifted_compare, AltSet, PreferenceOrder, TallyState, TieRule, VotingRule};
use seqvote::search::{find_paradoxes, verify_absence, ProfileSpace, SearchSpec, TieSpec};
use seqvote::solver::{naive_outcome, spe_outcome, spe_path};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn systems() -> [(VotingRule, TieSpec, &'static str); 4] {
    [
        (
            VotingRule::Plurality,
            TieSpec::Deterministic(None),
            "plurality-deterministic",
        ),
        (VotingRule::Plurality, TieSpec::Uniform, "plurality-uniform"),
        (
            VotingRule::Approval,
            TieSpec::Deterministic(None),
            "approval-deterministic",
        ),
        (VotingRule::Approval, TieSpec::Uniform, "approval-uniform"),
    ]
}

fn within(start: Instant, budget: Duration, detail: String) -> Check {
    let took = start.elapsed();
    if took <= budget {
        Ok(format!("{detail} in {:.2?}", took))
    } else {
        Err(format!("{detail}, but took {:.2?} (budget {:?})", took, budget))
    }
}

/// Criterion 1: Every published example reproduces its stated winning set and flag.
fn paper_fixtures() -> Check {
    let start = Instant::now();
    let results = run_fixtures();
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{}: {}", r.name, r.mismatches.join("; ")))
        .collect();
    if !failed.is_empty() || results.len() != 12 {
        return Err(format!(
            "{}/12 pass; {}",
            results.len() - failed.len(),
            failed.join(" | ")
        ));
    }
    within(start, Duration::from_secs(10), "12/12 fixtures".into())
}

/// Criterion 2: Memoized solver equals the history-tree oracle on every canonical
/// m = 3, n = 3 profile of all four systems.
fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut solved = 0;
    for (rule, tie, name) in systems() {
        let space = ProfileSpace::new(3, 3, rule, &tie, true).map_err(|e| e.to_string())?;
        for p in space.iter() {
            let oracle = naive_outcome(&p).map_err(|e| e.to_string())?;
            if spe_outcome(&p) != oracle {
                return Err(format!("{name}: mismatch on {:?}", p.voters()));
            }
            solved += 1;
        }
    }
    within(start, Duration::from_secs(5), format!("{solved} profiles agree"))
}

/// Criterion 3: No Pareto-dominated winner with three alternatives under approval
/// voting or plurality with uniform ties; the two-voter plurality
/// counterexample is found.
fn three_alternative_pareto() -> Check {
    let start = Instant::now();
    let mut scanned = 0;
    let certified = [
        (VotingRule::Approval, TieSpec::Deterministic(None)),
        (VotingRule::Approval, TieSpec::Uniform),
        (VotingRule::Plurality, TieSpec::Uniform),
    ];
    for (rule, tie) in certified {
        for n in 2..=4 {
            let spec = SearchSpec::new(n, 3, rule, tie.clone(), Paradox::ParetoWeak);
            let absence = verify_absence(&spec).map_err(|e| e.to_string())?;
            if !absence.holds {
                return Err(format!("{rule:?}/{tie:?} n={n}: paradox found"));
            }
            scanned += absence.profiles_scanned;
        }
    }
    let spec = SearchSpec::new(
        2,
        3,
        VotingRule::Plurality,
        TieSpec::Deterministic(None),
        Paradox::ParetoWeak,
    );
    if verify_absence(&spec).map_err(|e| e.to_string())?.holds {
        return Err("plurality-deterministic n=2 unexpectedly certified".into());
    }
    within(
        start,
        Duration::from_secs(120),
        format!("9 absence certificates over {scanned} profiles, 1 counterexample"),
    )
}

/// Criterion 4: With two alternatives a strict-majority favourite always wins alone.
fn two_alternatives() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for (rule, tie, name) in systems() {
        for n in 1..=5 {
            let space = ProfileSpace::new(n, 2, rule, &tie, false).map_err(|e| e.to_string())?;
            for p in space.iter() {
                let w = spe_outcome(&p);
                let report = classify_paradoxes(&p, w);
                if report.flags.condorcet_winner || report.flags.condorcet_loser {
                    return Err(format!("{name} n={n}: Condorcet paradox on {:?}", p.voters()));
                }
                for x in p.alternatives() {
                    let first = p.voters().iter().filter(|v| v.favourite() == x).count();
                    if 2 * first > n && w.members() != AltSet::singleton(x) {
                        return Err(format!("{name} n={n}: majority favourite loses on {:?}", p.voters()));
                    }
                }
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(10), format!("{checked} profiles"))
}

/// Criterion 5: Condorcet winner and loser paradoxes exist with three alternatives in
/// every system.
fn condorcet_search() -> Check {
    let start = Instant::now();
    let mut found = Vec::new();
    for (rule, tie, name) in systems() {
        for (paradox, max_n) in [(Paradox::CondorcetWinner, 5), (Paradox::CondorcetLoser, 7)] {
            let hit = (1..=max_n).find_map(|n| {
                let spec = SearchSpec::new(n, 3, rule, tie.clone(), paradox).with_limit(1);
                find_paradoxes(&spec)
                    .ok()
                    .and_then(|o| o.hits.into_iter().next())
                    .map(|h| (n, h))
            });
            match hit {
                Some((n, h)) if h.report.flags.get(paradox) => found.push(format!("{name}/{paradox}@n={n}")),
                _ => return Err(format!("{name}: no {paradox} paradox with n <= {max_n}")),
            }
        }
    }
    within(
        start,
        Duration::from_secs(600),
        format!("8/8 found ({})", found.join(", ")),
    )
}

/// Reference comparison: lexicographic on the probability that each ranked
/// alternative (best first) is drawn uniformly from the set.
fn probability_compare(order: &PreferenceOrder, s1: AltSet, s2: AltSet) -> Ordering {
    let (n1, n2) = (s1.len() as u64, s2.len() as u64);
    for a in order.ranking() {
        // p1 = [a in s1] / n1, p2 = [a in s2] / n2, compared by cross-multiplication
        let p1 = u64::from(s1.contains(*a)) * n2;
        let p2 = u64::from(s2.contains(*a)) * n1;
        match p1.cmp(&p2) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Criterion 6: The lifted order is a strict total order that extends the base order.
fn lifted_order_laws() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sets: Vec<AltSet> = (1..16u16).map(AltSet::from_bits).collect();
    for _ in 0..20 {
        let mut ranking: Vec<usize> = (0..4).collect();
        ranking.shuffle(&mut rng);
        let order = PreferenceOrder::from_indices(&ranking).map_err(|e| e.to_string())?;
        let cmp = |a: AltSet, b: AltSet| lifted_compare(&order, a, b).expect("nonempty");
        for &a in &sets {
            for &b in &sets {
                let ab = cmp(a, b);
                if (ab == Ordering::Equal) != (a == b) || ab != cmp(b, a).reverse() {
                    return Err(format!("{order:?}: not total/antisymmetric on {a:?} {b:?}"));
                }
                if ab != probability_compare(&order, a, b) {
                    return Err(format!("{order:?}: disagrees with probability ordering on {a:?} {b:?}"));
                }
                for &c in &sets {
                    if ab == Ordering::Greater && cmp(b, c) == Ordering::Greater && cmp(a, c) != Ordering::Greater {
                        return Err(format!("{order:?}: intransitive on {a:?} {b:?} {c:?}"));
                    }
                }
            }
        }
        for x in order.ranking() {
            for y in order.ranking().iter().filter(|y| *y != x) {
                let want = if order.prefers(*x, *y) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                if cmp(AltSet::singleton(*x), AltSet::singleton(*y)) != want {
                    return Err(format!("{order:?}: singleton {x:?} vs {y:?}"));
                }
            }
        }
    }
    within(start, Duration::from_secs(1), "20 orders x 15 subsets".into())
}

/// Criterion 7: Replaying the canonical equilibrium path reproduces the outcome.
fn path_replay() -> Check {
    let start = Instant::now();
    let mut replayed = 0;
    for (rule, tie, name) in systems() {
        for n in 1..=3 {
            let space = ProfileSpace::new(n, 3, rule, &tie, true).map_err(|e| e.to_string())?;
            for p in space.iter() {
                let r = spe_path(&p);
                let mut state = TallyState::zero(3);
                for b in &r.path {
                    state = p.apply_ballot(&state, *b).map_err(|e| e.to_string())?;
                }
                let w = p.winning_set(&state.counts);
                if r.path.len() != n || w != r.outcome || w != spe_outcome(&p) {
                    return Err(format!("{name}: replay mismatch on {:?}", p.voters()));
                }
                if matches!(p.tie(), TieRule::Deterministic(_)) && w.lone().is_none() {
                    return Err(format!("{name}: non-singleton deterministic outcome"));
                }
                replayed += 1;
            }
        }
    }
    within(start, Duration::from_secs(5), format!("{replayed} paths"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 published fixtures", paper_fixtures),
        ("AC2 oracle equivalence", oracle_equivalence),
        ("AC3 three-alternative Pareto certification", three_alternative_pareto),
        ("AC4 two-alternative soundness", two_alternatives),
        ("AC5 Condorcet paradox search", condorcet_search),
        ("AC6 lifted-order laws", lifted_order_laws),
        ("AC7 path replay", path_replay),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{}/{} acceptance criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
