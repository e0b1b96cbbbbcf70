//! Exact-arithmetic data model for ballot profiles.
//!
//! A [`Profile`] is a candidate roster plus a multiset of weighted,
//! precinct-tagged, top-truncated rankings. All counts are exact `u64`;
//! there is no floating point anywhere in tallies. Profiles are immutable
//! once built, so every operation returns a new value.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Characters that may not appear in candidate names or precinct labels:
/// they all carry meaning in the native file format or in CLI flag syntax.
pub const RESERVED_CHARS: [char; 4] = ['>', ';', ',', '\n'];

/// Label used for ballots whose precinct was not recorded. It partitions
/// like any other label.
pub const UNSPECIFIED_PRECINCT: &str = "*";

/// A candidate. The index within a profile's roster is its stable id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub name: String,
}

impl Candidate {
    pub fn new(name: impl Into<String>) -> Self {
        Candidate { name: name.into() }
    }
}

/// An ordered, duplicate-free, possibly truncated preference list,
/// stored as candidate indices into the owning profile's roster.
/// Never empty, so there is no `is_empty`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(clippy::len_without_is_empty)]
pub struct Ranking(Vec<usize>);

impl Ranking {
    /// Builds a ranking, rejecting empty lists and repeated candidates.
    /// Index bounds are checked against a roster in [`Profile::new`].
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProfile(
                "a ranking must list at least one candidate".into(),
            ));
        }
        for (i, c) in entries.iter().enumerate() {
            if entries[..i].contains(c) {
                return Err(Error::InvalidProfile(format!(
                    "candidate index {c} appears twice in a ranking"
                )));
            }
        }
        Ok(Ranking(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Number of ranked candidates; at least 1 by construction.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Highest-ranked candidate.
    pub fn first(&self) -> usize {
        self.0[0]
    }

    /// 0-based position of `candidate`, or `None` if unranked.
    pub fn position_of(&self, candidate: usize) -> Option<usize> {
        self.0.iter().position(|&c| c == candidate)
    }

    pub fn contains(&self, candidate: usize) -> bool {
        self.0.contains(&candidate)
    }

    /// True if the ranking lists exactly `candidate` and nothing else.
    pub fn is_bullet_for(&self, candidate: usize) -> bool {
        self.0.len() == 1 && self.0[0] == candidate
    }
}

/// A block of identical ballots: one ranking, a positive multiplicity,
/// and the precinct the ballots came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallotGroup {
    pub ranking: Ranking,
    pub count: u64,
    pub precinct: String,
}

impl BallotGroup {
    pub fn new(ranking: Ranking, count: u64) -> Self {
        BallotGroup {
            ranking,
            count,
            precinct: UNSPECIFIED_PRECINCT.to_string(),
        }
    }

    pub fn with_precinct(ranking: Ranking, count: u64, precinct: impl Into<String>) -> Self {
        BallotGroup {
            ranking,
            count,
            precinct: precinct.into(),
        }
    }
}

/// First-place counts for a profile, plus the ballots that no longer
/// count for anyone. `continuing + exhausted` equals the total ballots
/// of whatever was tallied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    /// Votes per candidate, indexed by roster position.
    pub votes: Vec<u64>,
    pub exhausted: u64,
}

impl Tally {
    pub fn continuing(&self) -> u64 {
        self.votes.iter().sum()
    }
}

/// A candidate roster plus a multiset of weighted rankings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    roster: Vec<Candidate>,
    groups: Vec<BallotGroup>,
    total: u64,
}

/// Applies the ballot identification a ranking of all-but-one candidate
/// fixes the last place: length n-1 entry lists gain the unique missing
/// candidate. Anything shorter stays truncated.
pub(crate) fn complete_entries(mut entries: Vec<usize>, n: usize) -> Vec<usize> {
    if n >= 2 && entries.len() == n - 1 {
        let missing = (0..n).find(|c| !entries.contains(c)).expect("one missing");
        entries.push(missing);
    }
    entries
}

/// Builds a ranking in profile-canonical form (completion applied).
pub(crate) fn canonical_ranking(entries: Vec<usize>, n: usize) -> Ranking {
    Ranking(complete_entries(entries, n))
}

fn validate_label(what: &str, label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::InvalidProfile(format!("{what} must be non-empty")));
    }
    if label.contains(RESERVED_CHARS) {
        return Err(Error::InvalidProfile(format!(
            "{what} `{label}` contains a reserved character (one of `>`, `;`, `,`, newline)"
        )));
    }
    Ok(())
}

impl Profile {
    /// Validates and assembles a profile. Groups are kept exactly as
    /// given; call [`Profile::normalize`] for the canonical form.
    pub fn new(roster: Vec<Candidate>, groups: Vec<BallotGroup>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &roster {
            validate_label("candidate name", &c.name)?;
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidProfile(format!(
                    "duplicate candidate name `{}`",
                    c.name
                )));
            }
        }
        let n = roster.len();
        let mut total: u128 = 0;
        for g in &groups {
            if g.count == 0 {
                return Err(Error::InvalidProfile(
                    "ballot group count must be at least 1".into(),
                ));
            }
            validate_label("precinct label", &g.precinct)?;
            if let Some(&bad) = g.ranking.entries().iter().find(|&&c| c >= n) {
                return Err(Error::InvalidProfile(format!(
                    "ranking refers to candidate index {bad}, but the roster has {n} candidates"
                )));
            }
            total += u128::from(g.count);
        }
        let total = u64::try_from(total).map_err(|_| {
            Error::InvalidProfile("total ballot count overflows a 64-bit counter".into())
        })?;
        Ok(Profile {
            roster,
            groups,
            total,
        })
    }

    /// Rebuilds a profile over the same roster from pre-validated groups.
    pub(crate) fn rebuild(&self, groups: Vec<BallotGroup>) -> Profile {
        let total = groups.iter().map(|g| g.count).sum();
        Profile {
            roster: self.roster.clone(),
            groups,
            total,
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.roster.len()
    }

    pub fn roster(&self) -> &[Candidate] {
        &self.roster
    }

    pub fn candidate_name(&self, index: usize) -> &str {
        &self.roster[index].name
    }

    pub fn candidate_names(&self) -> Vec<String> {
        self.roster.iter().map(|c| c.name.clone()).collect()
    }

    /// Roster index of the candidate with this name, if any.
    pub fn candidate_index(&self, name: &str) -> Option<usize> {
        self.roster.iter().position(|c| c.name == name)
    }

    pub fn groups(&self) -> &[BallotGroup] {
        &self.groups
    }

    pub fn total_ballots(&self) -> u64 {
        self.total
    }

    /// Distinct precinct labels, sorted.
    pub fn precinct_labels(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.groups.iter().map(|g| g.precinct.as_str()).collect();
        set.into_iter().map(str::to_string).collect()
    }

    /// Position of the group with exactly this (ranking, precinct) pair.
    pub fn group_index_of(&self, ranking: &Ranking, precinct: &str) -> Option<usize> {
        self.groups
            .iter()
            .position(|g| g.ranking == *ranking && g.precinct == precinct)
    }

    /// Canonical form: rankings of length n-1 are completed by appending
    /// the unique missing candidate (ranking all but one candidate fixes
    /// the last place, so the two forms denote the same ballot), groups
    /// with identical (ranking, precinct) are merged, and groups are
    /// sorted lexicographically by ranking entries, then precinct.
    ///
    /// Rankings shorter than n-1 are left truncated: those ballots say
    /// nothing about the relative order of their unranked candidates.
    pub fn normalize(&self) -> Profile {
        let n = self.roster.len();
        let mut merged: BTreeMap<(Ranking, String), u64> = BTreeMap::new();
        for g in &self.groups {
            let entries = complete_entries(g.ranking.entries().to_vec(), n);
            *merged
                .entry((Ranking(entries), g.precinct.clone()))
                .or_insert(0) += g.count;
        }
        let groups = merged
            .into_iter()
            .map(|((ranking, precinct), count)| BallotGroup {
                ranking,
                count,
                precinct,
            })
            .collect();
        Profile {
            roster: self.roster.clone(),
            groups,
            total: self.total,
        }
    }

    /// Removes the given candidates from the roster and from every
    /// ranking (preserving order). Groups whose ranking becomes empty
    /// are dropped and their ballots reported as exhausted. The result
    /// is merged and canonically ordered; truncated rankings stay
    /// truncated (a ballot that never ranked a candidate gains no
    /// preference from an elimination).
    ///
    /// Surviving candidates keep their names and relative order but are
    /// re-indexed densely from 0.
    pub fn restrict(&self, eliminated: &BTreeSet<usize>) -> Result<(Profile, u64)> {
        let n = self.roster.len();
        if let Some(&bad) = eliminated.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidArgument(format!(
                "cannot eliminate candidate index {bad}: roster has {n} candidates"
            )));
        }
        if eliminated.len() >= n {
            return Err(Error::InvalidArgument(
                "cannot eliminate every candidate".into(),
            ));
        }
        let mut new_index = vec![usize::MAX; n];
        let mut roster = Vec::with_capacity(n - eliminated.len());
        for (old, candidate) in self.roster.iter().enumerate() {
            if !eliminated.contains(&old) {
                new_index[old] = roster.len();
                roster.push(candidate.clone());
            }
        }
        let mut merged: BTreeMap<(Ranking, String), u64> = BTreeMap::new();
        let mut exhausted: u64 = 0;
        for g in &self.groups {
            let entries: Vec<usize> = g
                .ranking
                .entries()
                .iter()
                .filter(|c| !eliminated.contains(c))
                .map(|&c| new_index[c])
                .collect();
            if entries.is_empty() {
                exhausted += g.count;
            } else {
                *merged
                    .entry((Ranking(entries), g.precinct.clone()))
                    .or_insert(0) += g.count;
            }
        }
        let groups: Vec<BallotGroup> = merged
            .into_iter()
            .map(|((ranking, precinct), count)| BallotGroup {
                ranking,
                count,
                precinct,
            })
            .collect();
        let total = self.total - exhausted;
        Ok((
            Profile {
                roster,
                groups,
                total,
            },
            exhausted,
        ))
    }

    /// Counts each group for the first candidate on its ranking. Every
    /// ballot has a first choice, so nothing is exhausted here.
    pub fn first_place_tally(&self) -> Tally {
        let mut votes = vec![0u64; self.roster.len()];
        for g in &self.groups {
            votes[g.ranking.first()] += g.count;
        }
        Tally {
            votes,
            exhausted: 0,
        }
    }
}
