//! Monotonicity paradoxes: a winner undone by gaining support (upward)
//! or a loser rescued by losing support (downward). Verification checks
//! a concrete scenario; search enumerates single- and two-shift
//! scenarios built from adjacent-position swaps and subject bullets.

use rayon::prelude::*;

use crate::error::Result;
use crate::methods::{irv, IrvOutcome, TieBreakPolicy};
use crate::paradox::scenario::{
    apply_scenario, classify_shift, BallotShift, Scenario, ShiftClass,
};
use crate::profile::{canonical_ranking, Profile, Ranking};

/// Which way the ballots move relative to the subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Shifts favor the subject; a paradox means the subject stops winning.
    Up,
    /// Shifts hurt the subject; a paradox means the subject starts winning.
    Down,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }

    fn required_class(&self) -> ShiftClass {
        match self {
            Direction::Up => ShiftClass::Favorable,
            Direction::Down => ShiftClass::Unfavorable,
        }
    }
}

/// Evidence that a monotonicity paradox holds: the scenario plus both
/// complete tabulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityFinding {
    pub direction: Direction,
    pub subject: usize,
    pub scenario: Scenario,
    pub original: IrvOutcome,
    pub modified: IrvOutcome,
}

/// Checks one scenario. Returns a finding only when all three clauses
/// hold: the subject wins (up) or loses (down) the original election,
/// every shift is favorable (up) or unfavorable (down) to the subject,
/// and the modified election flips that status. Application errors
/// (missing source group, insufficient ballots) propagate.
pub fn verify_monotonicity(
    profile: &Profile,
    scenario: &Scenario,
    subject: usize,
    direction: Direction,
) -> Result<Option<MonotonicityFinding>> {
    let modified_profile = apply_scenario(profile, scenario)?;
    let original = irv(profile, TieBreakPolicy::Backward)?;
    check_clauses(
        profile,
        &original,
        &modified_profile,
        scenario,
        subject,
        direction,
    )
}

fn check_clauses(
    profile: &Profile,
    original: &IrvOutcome,
    modified_profile: &Profile,
    scenario: &Scenario,
    subject: usize,
    direction: Direction,
) -> Result<Option<MonotonicityFinding>> {
    let wins_original = original.winner == subject;
    let should_win_original = matches!(direction, Direction::Up);
    if wins_original != should_win_original {
        return Ok(None);
    }
    let n = profile.num_candidates();
    let required = direction.required_class();
    if scenario
        .shifts()
        .iter()
        .any(|s| classify_shift(s, subject, n) != required)
    {
        return Ok(None);
    }
    let modified = irv(modified_profile, TieBreakPolicy::Backward)?;
    let wins_modified = modified.winner == subject;
    if wins_modified == should_win_original {
        return Ok(None);
    }
    Ok(Some(MonotonicityFinding {
        direction,
        subject,
        scenario: scenario.clone(),
        original: original.clone(),
        modified,
    }))
}

/// Bounds on the scenario enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop after evaluating this many scenarios.
    pub max_scenarios: u64,
    /// Shift sizes are multiples of this (a step of 0 behaves as 1).
    pub step: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_scenarios: 100_000,
            step: 1,
        }
    }
}

/// A candidate shift in compact form: move `count` ballots of group
/// `group` onto `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ShiftSpec {
    group: usize,
    to: Ranking,
    count: u64,
}

/// Searches for monotonicity paradoxes. For direction up the subject is
/// the current winner and targets promote the subject (adjacent-position
/// swap or subject bullet); for direction down each current non-winner
/// is a subject and targets demote it by one position. Shift sizes run
/// over multiples of `limits.step` up to each group's count; scenarios
/// combine one or two shifts. Findings come back in deterministic
/// enumeration order regardless of how many workers evaluate them.
pub fn search_monotonicity(
    profile: &Profile,
    direction: Direction,
    limits: SearchLimits,
) -> Vec<MonotonicityFinding> {
    let Ok(original) = irv(profile, TieBreakPolicy::Backward) else {
        return Vec::new();
    };
    let normalized = profile.normalize();
    let n = normalized.num_candidates();
    let step = limits.step.max(1);
    let subjects: Vec<usize> = match direction {
        Direction::Up => vec![original.winner],
        Direction::Down => (0..n).filter(|&c| c != original.winner).collect(),
    };

    // Materialize scenario descriptors up to the evaluation budget, then
    // verify them in parallel and keep the enumeration order.
    let mut scenarios: Vec<(usize, ShiftSpec, Option<ShiftSpec>)> = Vec::new();
    let mut budget = limits.max_scenarios;
    'subjects: for &subject in &subjects {
        let singles = candidate_shifts(&normalized, subject, direction, step);
        for single in &singles {
            if budget == 0 {
                break 'subjects;
            }
            budget -= 1;
            scenarios.push((subject, single.clone(), None));
        }
        for (i, first) in singles.iter().enumerate() {
            for second in &singles[i + 1..] {
                if first.group == second.group {
                    if first.to == second.to {
                        continue; // mergeable into a single larger shift
                    }
                    let available = normalized.groups()[first.group].count;
                    if first.count + second.count > available {
                        continue;
                    }
                }
                if budget == 0 {
                    break 'subjects;
                }
                budget -= 1;
                scenarios.push((subject, first.clone(), Some(second.clone())));
            }
        }
    }

    let findings: Vec<Option<MonotonicityFinding>> = scenarios
        .into_par_iter()
        .map(|(subject, first, second)| {
            let mut shifts = vec![to_shift(&normalized, &first)];
            if let Some(second) = second {
                shifts.push(to_shift(&normalized, &second));
            }
            let scenario = Scenario::new(shifts).expect("non-empty by construction");
            let modified_profile = apply_scenario(&normalized, &scenario).ok()?;
            check_clauses(
                &normalized,
                &original,
                &modified_profile,
                &scenario,
                subject,
                direction,
            )
            .ok()
            .flatten()
        })
        .collect();
    findings.into_iter().flatten().collect()
}

fn to_shift(profile: &Profile, spec: &ShiftSpec) -> BallotShift {
    let group = &profile.groups()[spec.group];
    BallotShift::new(
        group.ranking.clone(),
        spec.to.clone(),
        group.precinct.clone(),
        spec.count,
    )
    .expect("search targets differ from their source ranking")
}

/// Enumerates candidate shifts for one subject in deterministic order:
/// groups in canonical order, swap target before bullet target, shift
/// sizes ascending.
fn candidate_shifts(
    profile: &Profile,
    subject: usize,
    direction: Direction,
    step: u64,
) -> Vec<ShiftSpec> {
    let n = profile.num_candidates();
    let required = direction.required_class();
    let mut specs = Vec::new();
    for (gi, group) in profile.groups().iter().enumerate() {
        let mut targets: Vec<Ranking> = Vec::new();
        let entries = group.ranking.entries();
        match direction {
            Direction::Up => {
                if let Some(i) = group.ranking.position_of(subject) {
                    if i > 0 {
                        let mut swapped = entries.to_vec();
                        swapped.swap(i - 1, i);
                        targets.push(canonical_ranking(swapped, n));
                    }
                }
                targets.push(canonical_ranking(vec![subject], n));
            }
            Direction::Down => {
                if let Some(i) = group.ranking.position_of(subject) {
                    if i + 1 < entries.len() {
                        let mut swapped = entries.to_vec();
                        swapped.swap(i, i + 1);
                        targets.push(canonical_ranking(swapped, n));
                    }
                }
            }
        }
        targets.retain(|t| *t != group.ranking);
        targets.dedup();
        for to in targets {
            let probe = BallotShift {
                from: group.ranking.clone(),
                to: to.clone(),
                precinct: group.precinct.clone(),
                count: 1,
            };
            debug_assert_eq!(classify_shift(&probe, subject, n), required);
            let mut k = step;
            while k <= group.count {
                specs.push(ShiftSpec {
                    group: gi,
                    to: to.clone(),
                    count: k,
                });
                k += step;
            }
        }
    }
    specs
}
