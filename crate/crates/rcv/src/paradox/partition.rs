//! Consistency paradoxes: a candidate who wins both halves of a split
//! electorate yet loses the combined election. Precinct-level splits are
//! enumerated exhaustively; ballot-level splits are sampled with a
//! seeded, parallelism-independent search.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::methods::{irv, IrvOutcome, TieBreakPolicy};
use crate::profile::{BallotGroup, Profile};

/// Granularity of a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionLevel {
    /// Whole precincts move together.
    Precinct,
    /// Individual ballots within a group may land on either side.
    Ballot,
}

impl PartitionLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PartitionLevel::Precinct => "precinct",
            PartitionLevel::Ballot => "ballot",
        }
    }
}

/// A two-way split of the electorate, expressed as how many ballots of
/// each group (in the profile's normalized group order) go to side 1;
/// the rest go to side 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub level: PartitionLevel,
    pub side1: Vec<u64>,
}

impl Partition {
    pub fn ballot_level(side1: Vec<u64>) -> Self {
        Partition {
            level: PartitionLevel::Ballot,
            side1,
        }
    }

    /// Whole-precinct split: groups whose label is in `side1_labels` go
    /// to side 1. The labels must be a non-empty proper subset of the
    /// profile's labels.
    pub fn by_precincts(profile: &Profile, side1_labels: &BTreeSet<String>) -> Result<Self> {
        let labels: BTreeSet<String> = profile.precinct_labels().into_iter().collect();
        for label in side1_labels {
            if !labels.contains(label) {
                return Err(Error::InvalidArgument(format!(
                    "unknown precinct label `{label}`"
                )));
            }
        }
        if side1_labels.is_empty() || side1_labels.len() == labels.len() {
            return Err(Error::EmptySide);
        }
        let side1 = profile
            .groups()
            .iter()
            .map(|g| {
                if side1_labels.contains(&g.precinct) {
                    g.count
                } else {
                    0
                }
            })
            .collect();
        Ok(Partition {
            level: PartitionLevel::Precinct,
            side1,
        })
    }

    /// Parses the precinct split syntax `P1,P5|rest` against a profile:
    /// labels left of `|` form side 1; the right side must either be the
    /// keyword `rest` or list the remaining labels exactly.
    pub fn parse_precinct_spec(text: &str, profile: &Profile) -> Result<Self> {
        let (left, right) = text.split_once('|').ok_or_else(|| {
            Error::InvalidArgument(format!(
                "bad partition `{text}`: expected `LABEL,...|rest` or `LABEL,...|LABEL,...`"
            ))
        })?;
        let parse_side = |side: &str| -> BTreeSet<String> {
            side.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect()
        };
        let side1 = parse_side(left);
        let all: BTreeSet<String> = profile.precinct_labels().into_iter().collect();
        if right.trim() != "rest" {
            let side2 = parse_side(right);
            let union: BTreeSet<String> = side1.union(&side2).cloned().collect();
            if side1.intersection(&side2).next().is_some() || union != all {
                return Err(Error::InvalidArgument(format!(
                    "bad partition `{text}`: sides must split the precinct labels exactly"
                )));
            }
        }
        Partition::by_precincts(profile, &side1)
    }

    /// Checks the slice counts against a profile.
    pub fn validate(&self, profile: &Profile) -> Result<()> {
        let groups = profile.groups();
        if self.side1.len() != groups.len() {
            return Err(Error::InvalidArgument(format!(
                "partition covers {} groups but the profile has {}",
                self.side1.len(),
                groups.len()
            )));
        }
        for (slice, group) in self.side1.iter().zip(groups) {
            if *slice > group.count {
                return Err(Error::InvalidArgument(format!(
                    "partition sends {slice} ballots of a {}-ballot group to side 1",
                    group.count
                )));
            }
        }
        let side1_total: u64 = self.side1.iter().sum();
        if side1_total == 0 || side1_total == profile.total_ballots() {
            return Err(Error::EmptySide);
        }
        Ok(())
    }

    /// Precinct labels fully on side 1 (meaningful for precinct-level
    /// partitions).
    pub fn side1_precincts(&self, profile: &Profile) -> Vec<String> {
        let mut side1: BTreeSet<&str> = BTreeSet::new();
        let mut side2: BTreeSet<&str> = BTreeSet::new();
        for (slice, group) in self.side1.iter().zip(profile.groups()) {
            if *slice == group.count {
                side1.insert(&group.precinct);
            } else {
                side2.insert(&group.precinct);
            }
        }
        side1
            .difference(&side2)
            .map(|s| s.to_string())
            .collect()
    }
}

/// Splits a profile in two per the partition; both sides share the
/// original roster and come back normalized.
pub fn split_by_partition(profile: &Profile, partition: &Partition) -> Result<(Profile, Profile)> {
    partition.validate(profile)?;
    let mut side1: Vec<BallotGroup> = Vec::new();
    let mut side2: Vec<BallotGroup> = Vec::new();
    for (slice, group) in partition.side1.iter().zip(profile.groups()) {
        if *slice > 0 {
            let mut g = group.clone();
            g.count = *slice;
            side1.push(g);
        }
        if *slice < group.count {
            let mut g = group.clone();
            g.count = group.count - slice;
            side2.push(g);
        }
    }
    Ok((
        profile.rebuild(side1).normalize(),
        profile.rebuild(side2).normalize(),
    ))
}

/// Evidence of a consistency paradox: the partition plus all three
/// tabulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyFinding {
    pub subject: usize,
    pub partition: Partition,
    pub outcome1: IrvOutcome,
    pub outcome2: IrvOutcome,
    pub combined: IrvOutcome,
}

/// Runs IRV on both sides and on the whole; a finding exists only if
/// the subject wins both sides but not the combined election.
pub fn verify_consistency(
    profile: &Profile,
    partition: &Partition,
    subject: usize,
) -> Result<Option<ConsistencyFinding>> {
    let (p1, p2) = split_by_partition(profile, partition)?;
    let outcome1 = irv(&p1, TieBreakPolicy::Backward)?;
    let outcome2 = irv(&p2, TieBreakPolicy::Backward)?;
    let combined = irv(profile, TieBreakPolicy::Backward)?;
    if outcome1.winner == subject && outcome2.winner == subject && combined.winner != subject {
        Ok(Some(ConsistencyFinding {
            subject,
            partition: partition.clone(),
            outcome1,
            outcome2,
            combined,
        }))
    } else {
        Ok(None)
    }
}

/// Hard cap on exhaustive precinct enumeration; beyond this the search
/// space is out of reach anyway.
const MAX_PRECINCT_LABELS: u32 = 20;

/// Evaluates every bipartition of the precinct-label set (2^(p-1) - 1 of
/// them) against every subject, in deterministic order: label bitmask
/// ascending, then candidates by index.
pub fn enumerate_precinct_partitions(profile: &Profile) -> Result<Vec<ConsistencyFinding>> {
    let labels = profile.precinct_labels();
    let p = labels.len();
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "precinct enumeration needs at least 2 distinct labels, found {p}"
        )));
    }
    if p as u32 > MAX_PRECINCT_LABELS {
        return Err(Error::InvalidArgument(format!(
            "{p} precinct labels make exhaustive enumeration infeasible (limit {MAX_PRECINCT_LABELS})"
        )));
    }
    let combined = irv(profile, TieBreakPolicy::Backward)?;
    let masks: Vec<u64> = (0..(1u64 << (p - 1)) - 1).collect();
    let findings: Vec<Option<ConsistencyFinding>> = masks
        .into_par_iter()
        .map(|mask| {
            // labels[0] anchors side 1 so each bipartition appears once.
            let mut side1_labels = BTreeSet::from([labels[0].clone()]);
            for bit in 0..p - 1 {
                if mask & (1 << bit) != 0 {
                    side1_labels.insert(labels[bit + 1].clone());
                }
            }
            let partition = Partition::by_precincts(profile, &side1_labels)
                .expect("labels come from the profile");
            check_partition(profile, &combined, partition).unwrap_or(None)
        })
        .collect();
    Ok(findings.into_iter().flatten().collect())
}

fn check_partition(
    profile: &Profile,
    combined: &IrvOutcome,
    partition: Partition,
) -> Result<Option<ConsistencyFinding>> {
    let (p1, p2) = split_by_partition(profile, &partition)?;
    let outcome1 = irv(&p1, TieBreakPolicy::Backward)?;
    if outcome1.winner == combined.winner {
        return Ok(None);
    }
    let outcome2 = irv(&p2, TieBreakPolicy::Backward)?;
    // Only the common side winner can be the subject of a finding.
    if outcome1.winner != outcome2.winner {
        return Ok(None);
    }
    Ok(Some(ConsistencyFinding {
        subject: outcome1.winner,
        partition,
        outcome1,
        outcome2,
        combined: combined.clone(),
    }))
}

/// Seeded randomized search over ballot-level partitions. Each trial
/// draws one slice count per group from its own random stream derived
/// from `(seed, trial)`, so results are identical for equal inputs no
/// matter how many workers run the trials. Findings are de-duplicated
/// by (subject, slice vector) and sorted canonically. Partitions are
/// canonicalized against their mirror image before evaluation.
pub fn search_ballot_partitions(
    profile: &Profile,
    seed: u64,
    trials: u64,
) -> Result<Vec<ConsistencyFinding>> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "the partition search needs at least one trial".into(),
        ));
    }
    let normalized = profile.normalize();
    let Ok(combined) = irv(&normalized, TieBreakPolicy::Backward) else {
        return Ok(Vec::new());
    };
    let counts: Vec<u64> = normalized.groups().iter().map(|g| g.count).collect();
    let total = normalized.total_ballots();

    let findings: Vec<ConsistencyFinding> = (0..trials)
        .into_par_iter()
        .filter_map(|trial| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let mut side1: Vec<u64> = counts
                .iter()
                .map(|&c| rng.random_range(0..=c))
                .collect();
            let side1_total: u64 = side1.iter().sum();
            if side1_total == 0 || side1_total == total {
                return None;
            }
            // Canonical orientation: lexicographically smallest of the
            // slice vector and its mirror.
            let mirror: Vec<u64> = side1
                .iter()
                .zip(&counts)
                .map(|(&s, &c)| c - s)
                .collect();
            if mirror < side1 {
                side1 = mirror;
            }
            let partition = Partition::ballot_level(side1);
            check_partition(&normalized, &combined, partition).unwrap_or(None)
        })
        .collect();

    let mut unique: BTreeMap<(usize, Vec<u64>), ConsistencyFinding> = BTreeMap::new();
    for finding in findings {
        unique
            .entry((finding.subject, finding.partition.side1.clone()))
            .or_insert(finding);
    }
    Ok(unique.into_values().collect())
}
