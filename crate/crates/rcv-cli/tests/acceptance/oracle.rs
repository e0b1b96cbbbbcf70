//! Independent test oracles. Everything here re-derives results from
//! first principles (from-scratch recounts, naive nested-loop searches)
//! and deliberately shares no tabulation code with the library.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

use rcv::paradox::Direction;
use rcv::profile::{BallotGroup, Candidate, Profile, Ranking};

const NAMES: [&str; 5] = ["A", "B", "C", "D", "E"];

/// Random profile over up to `max_n` candidates. May have zero groups.
pub fn random_profile(
    rng: &mut ChaCha12Rng,
    max_n: usize,
    max_groups: usize,
    max_count: u64,
) -> Profile {
    let n = rng.random_range(1..=max_n);
    let roster: Vec<Candidate> = NAMES[..n].iter().map(|s| Candidate::new(*s)).collect();
    let num_groups = rng.random_range(0..=max_groups);
    let precincts = ["*", "P1", "P2"];
    let mut groups = Vec::with_capacity(num_groups);
    for _ in 0..num_groups {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        order.truncate(rng.random_range(1..=n));
        groups.push(BallotGroup::with_precinct(
            Ranking::new(order).unwrap(),
            rng.random_range(1..=max_count),
            precincts[rng.random_range(0..precincts.len())],
        ));
    }
    Profile::new(roster, groups).unwrap()
}

/// Like [`random_profile`] but guaranteed to have at least one ballot.
pub fn random_nonempty_profile(
    rng: &mut ChaCha12Rng,
    max_n: usize,
    max_groups: usize,
    max_count: u64,
) -> Profile {
    loop {
        let p = random_profile(rng, max_n, max_groups, max_count);
        if p.total_ballots() > 0 {
            return p;
        }
    }
}

/// One recounted round: continuing candidates with their tallies, plus
/// who was eliminated afterwards (`None` in the final round).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRound {
    pub tallies: BTreeMap<usize, u64>,
    pub exhausted: u64,
    pub eliminated: Option<usize>,
}

/// Straightforward IRV: recount every ballot from scratch each round
/// against the set of eliminated candidates, stop on a strict majority
/// of continuing votes or with two candidates left, eliminate the
/// fewest-votes candidate otherwise (ties: fewest in the previous
/// round, walking backwards, then lowest index). Returns `None` if all
/// ballots exhaust first.
pub fn oracle_irv(profile: &Profile) -> Option<(usize, Vec<OracleRound>)> {
    let n = profile.num_candidates();
    if n == 0 || profile.total_ballots() == 0 {
        return None;
    }
    let mut eliminated: BTreeSet<usize> = BTreeSet::new();
    let mut history: Vec<BTreeMap<usize, u64>> = Vec::new();
    let mut rounds: Vec<OracleRound> = Vec::new();
    loop {
        let mut tallies: BTreeMap<usize, u64> = (0..n)
            .filter(|c| !eliminated.contains(c))
            .map(|c| (c, 0))
            .collect();
        let mut exhausted = 0;
        for g in profile.groups() {
            match g
                .ranking
                .entries()
                .iter()
                .find(|c| !eliminated.contains(c))
            {
                Some(c) => *tallies.get_mut(c).unwrap() += g.count,
                None => exhausted += g.count,
            }
        }
        let continuing: u64 = tallies.values().sum();
        if continuing == 0 {
            return None;
        }
        history.push(tallies.clone());
        let top = *tallies.values().max().unwrap();
        if 2 * top > continuing || tallies.len() <= 2 {
            let tied: Vec<usize> = tallies
                .iter()
                .filter(|(_, &v)| v == top)
                .map(|(&c, _)| c)
                .collect();
            let winner = back_tie_break(&tied, &history, false);
            rounds.push(OracleRound {
                tallies,
                exhausted,
                eliminated: None,
            });
            return Some((winner, rounds));
        }
        let bottom = *tallies.values().min().unwrap();
        let tied: Vec<usize> = tallies
            .iter()
            .filter(|(_, &v)| v == bottom)
            .map(|(&c, _)| c)
            .collect();
        let loser = back_tie_break(&tied, &history, true);
        rounds.push(OracleRound {
            tallies,
            exhausted,
            eliminated: Some(loser),
        });
        eliminated.insert(loser);
    }
}

fn back_tie_break(tied: &[usize], history: &[BTreeMap<usize, u64>], prefer_min: bool) -> usize {
    let mut remaining = tied.to_vec();
    // history's last entry is the current round, where all are tied.
    for round in history.iter().rev().skip(1) {
        if remaining.len() == 1 {
            return remaining[0];
        }
        let values: Vec<u64> = remaining.iter().map(|c| round[c]).collect();
        let target = if prefer_min {
            *values.iter().min().unwrap()
        } else {
            *values.iter().max().unwrap()
        };
        remaining.retain(|c| round[c] == target);
    }
    *remaining.iter().min().unwrap()
}

/// Ballots that rank neither `a` nor `b`; used for the pairwise
/// complement identity.
pub fn count_ranking_neither(profile: &Profile, a: usize, b: usize) -> u64 {
    profile
        .groups()
        .iter()
        .filter(|g| !g.ranking.contains(a) && !g.ranking.contains(b))
        .map(|g| g.count)
        .sum()
}

/// A shift candidate for the brute-force paradox search: move `count`
/// ballots of group `group` to the ranking `to`.
#[derive(Debug, Clone)]
struct Move {
    group: usize,
    to: Vec<usize>,
    count: u64,
}

/// Exhaustive brute-force monotonicity search over the same scenario
/// space the library's search contract defines: single and double
/// shifts, every size from 1 up to the group count, targets being
/// adjacent-position swaps around the subject plus (upward only) the
/// subject's bullet ballot. Tabulation goes through [`oracle_irv`].
/// Returns whether any scenario exhibits the paradox.
pub fn brute_force_monotonicity_exists(profile: &Profile, direction: Direction) -> bool {
    let normalized = profile.normalize();
    let Some((winner, _)) = oracle_irv(&normalized) else {
        return false;
    };
    let n = normalized.num_candidates();
    let subjects: Vec<usize> = match direction {
        Direction::Up => vec![winner],
        Direction::Down => (0..n).filter(|&c| c != winner).collect(),
    };
    for subject in subjects {
        let mut moves: Vec<Move> = Vec::new();
        for (gi, group) in normalized.groups().iter().enumerate() {
            for to in oracle_targets(group.ranking.entries(), subject, direction) {
                for count in 1..=group.count {
                    moves.push(Move {
                        group: gi,
                        to: to.clone(),
                        count,
                    });
                }
            }
        }
        for (i, first) in moves.iter().enumerate() {
            if flips_winner(&normalized, subject, direction, std::slice::from_ref(first)) {
                return true;
            }
            for second in &moves[i + 1..] {
                if first.group == second.group
                    && first.count + second.count > normalized.groups()[first.group].count
                {
                    continue;
                }
                if flips_winner(
                    &normalized,
                    subject,
                    direction,
                    &[first.clone(), second.clone()],
                ) {
                    return true;
                }
            }
        }
    }
    false
}

fn oracle_targets(entries: &[usize], subject: usize, direction: Direction) -> Vec<Vec<usize>> {
    let mut targets = Vec::new();
    let position = entries.iter().position(|&c| c == subject);
    match direction {
        Direction::Up => {
            if let Some(i) = position {
                if i > 0 {
                    let mut swapped = entries.to_vec();
                    swapped.swap(i - 1, i);
                    targets.push(swapped);
                }
            }
            targets.push(vec![subject]);
        }
        Direction::Down => {
            if let Some(i) = position {
                if i + 1 < entries.len() {
                    let mut swapped = entries.to_vec();
                    swapped.swap(i, i + 1);
                    targets.push(swapped);
                }
            }
        }
    }
    targets.retain(|t| t != entries);
    targets
}

fn flips_winner(profile: &Profile, subject: usize, direction: Direction, moves: &[Move]) -> bool {
    let mut groups: Vec<BallotGroup> = profile.groups().to_vec();
    for m in moves {
        let precinct = groups[m.group].precinct.clone();
        if groups[m.group].count < m.count {
            return false;
        }
        groups[m.group].count -= m.count;
        if let Some(target) = groups
            .iter_mut()
            .find(|g| g.ranking.entries() == m.to && g.precinct == precinct)
        {
            target.count += m.count;
        } else {
            groups.push(BallotGroup::with_precinct(
                Ranking::new(m.to.clone()).unwrap(),
                m.count,
                precinct,
            ));
        }
    }
    groups.retain(|g| g.count > 0);
    let modified = Profile::new(profile.roster().to_vec(), groups)
        .unwrap()
        .normalize();
    let Some((new_winner, _)) = oracle_irv(&modified) else {
        return false;
    };
    match direction {
        Direction::Up => new_winner != subject,
        Direction::Down => new_winner == subject,
    }
}
