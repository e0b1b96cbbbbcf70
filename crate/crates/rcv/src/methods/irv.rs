use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::methods::{pick_extremum, TieBreakPolicy};
use crate::profile::Profile;

/// One instant-runoff round. Tallies and transfers are indexed by the
/// original roster; `None` marks candidates no longer continuing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrvRound {
    /// 1-based round index.
    pub number: u32,
    /// First-place tallies at the start of this round.
    pub tallies: Vec<Option<u64>>,
    /// Ballots exhausted before this round's tally was taken.
    pub cumulative_exhausted: u64,
    /// Candidate eliminated this round; absent in the final round.
    pub eliminated: Option<usize>,
    /// Votes each continuing candidate receives from this round's
    /// elimination (all zero when nothing is eliminated).
    pub transfers: Vec<u64>,
    /// Ballots exhausted by this round's elimination.
    pub exhausted_this_round: u64,
    /// Set when this round's elimination or winner needed the tie-break
    /// policy to disambiguate candidates with equal tallies.
    pub tie_broken: bool,
}

impl IrvRound {
    /// Votes still counting for some candidate in this round.
    pub fn continuing(&self) -> u64 {
        self.tallies.iter().map(|t| t.unwrap_or(0)).sum()
    }
}

/// Why tabulation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The leader holds strictly more than half of the continuing votes.
    MajorityReached,
    /// Two candidates remain without a strict majority (an exact tie);
    /// the winner comes from the tie-break policy.
    TwoRemaining,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::MajorityReached => "majority-reached",
            StopReason::TwoRemaining => "two-remaining",
        }
    }
}

/// Winner plus the complete per-round record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrvOutcome {
    pub winner: usize,
    pub rounds: Vec<IrvRound>,
    pub stop_reason: StopReason,
}

impl IrvOutcome {
    pub fn final_round(&self) -> &IrvRound {
        self.rounds.last().expect("at least one round")
    }
}

/// Runs instant-runoff voting: repeatedly tally first places, stop once
/// the leader holds a strict majority of continuing votes (or two
/// candidates remain), otherwise eliminate the weakest candidate and
/// restrict the profile to the survivors. Transfers are recorded on the
/// round whose elimination produced them.
pub fn irv(profile: &Profile, policy: TieBreakPolicy) -> Result<IrvOutcome> {
    let n = profile.num_candidates();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cannot run IRV on an empty roster".into(),
        ));
    }
    if profile.total_ballots() == 0 {
        return Err(Error::InvalidArgument(
            "cannot run IRV without any ballots".into(),
        ));
    }

    // `work` shrinks as candidates are eliminated; `original_of[i]` maps
    // its roster back to the input profile's indices.
    let mut work = profile.clone();
    let mut original_of: Vec<usize> = (0..n).collect();
    let mut cumulative_exhausted: u64 = 0;
    let mut history: Vec<Vec<Option<u64>>> = Vec::new();
    let mut rounds: Vec<IrvRound> = Vec::new();
    let mut number: u32 = 1;

    loop {
        let tally = work.first_place_tally();
        let mut tallies: Vec<Option<u64>> = vec![None; n];
        for (cur, &orig) in original_of.iter().enumerate() {
            tallies[orig] = Some(tally.votes[cur]);
        }
        let continuing = tally.continuing();
        if continuing == 0 {
            return Err(Error::NoWinner);
        }
        history.push(tallies.clone());
        let previous_rounds = &history[..history.len() - 1];

        let leader = original_of
            .iter()
            .copied()
            .max_by_key(|&c| tallies[c].unwrap())
            .unwrap();
        let majority = tallies[leader].unwrap() * 2 > continuing;
        if majority || original_of.len() <= 2 {
            let (winner, tie_broken) = pick_extremum(
                policy,
                &original_of,
                |c| tallies[c].unwrap(),
                previous_rounds,
                false,
            );
            rounds.push(IrvRound {
                number,
                tallies,
                cumulative_exhausted,
                eliminated: None,
                transfers: vec![0; n],
                exhausted_this_round: 0,
                tie_broken,
            });
            let stop_reason = if majority {
                StopReason::MajorityReached
            } else {
                StopReason::TwoRemaining
            };
            return Ok(IrvOutcome {
                winner,
                rounds,
                stop_reason,
            });
        }

        let (loser, tie_broken) = pick_extremum(
            policy,
            &original_of,
            |c| tallies[c].unwrap(),
            previous_rounds,
            true,
        );
        let loser_cur = original_of.iter().position(|&c| c == loser).unwrap();
        let (next, newly_exhausted) = work.restrict(&BTreeSet::from([loser_cur]))?;
        original_of.remove(loser_cur);

        // A transfer is the only way a first-place tally can change.
        let next_tally = next.first_place_tally();
        let mut transfers = vec![0u64; n];
        for (cur, &orig) in original_of.iter().enumerate() {
            transfers[orig] = next_tally.votes[cur] - tallies[orig].unwrap();
        }
        debug_assert_eq!(
            transfers.iter().sum::<u64>() + newly_exhausted,
            tallies[loser].unwrap()
        );

        rounds.push(IrvRound {
            number,
            tallies,
            cumulative_exhausted,
            eliminated: Some(loser),
            transfers,
            exhausted_this_round: newly_exhausted,
            tie_broken,
        });
        cumulative_exhausted += newly_exhausted;
        work = next;
        number += 1;
    }
}
