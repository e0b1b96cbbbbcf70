//! Winner determination: plurality, instant runoff with full round
//! records, Borda with configurable truncation conventions, pairwise
//! matrix, Condorcet winner, and majority-cycle detection.

mod irv;
mod pairwise;
mod positional;

pub use irv::{irv, IrvOutcome, IrvRound, StopReason};
pub use pairwise::{condorcet_winner, majority_cycle, pairwise_matrix, CycleReport, PairwiseMatrix};
pub use positional::{borda, plurality, BordaConvention, BordaResult, BordaScore, PluralityResult};

/// How ties are resolved, both when choosing whom to eliminate and when
/// naming a winner among equal tallies.
///
/// `Backward` compares the tied candidates' tallies in earlier rounds,
/// most recent first, and falls back to the lowest candidate index. For
/// single-round methods (plurality, Borda) only the index fallback
/// applies. Any result that needed disambiguation is flagged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreakPolicy {
    #[default]
    Backward,
}

/// Resolves a tie among `tied` (roster indices) using earlier-round
/// tallies, walking `history` from the most recent round backwards.
/// `prefer_min` picks the candidate to eliminate; otherwise the winner.
/// Returns the chosen candidate; `tied` must be non-empty.
pub(crate) fn break_tie(
    _policy: TieBreakPolicy,
    tied: &[usize],
    history: &[Vec<Option<u64>>],
    prefer_min: bool,
) -> usize {
    debug_assert!(!tied.is_empty());
    let mut remaining: Vec<usize> = tied.to_vec();
    for round in history.iter().rev() {
        if remaining.len() == 1 {
            break;
        }
        let value = |c: usize| round[c].expect("tied candidates were continuing");
        let best = remaining
            .iter()
            .map(|&c| value(c))
            .reduce(|a, b| if prefer_min { a.min(b) } else { a.max(b) })
            .unwrap();
        remaining.retain(|&c| value(c) == best);
    }
    // Lowest index is the final fallback.
    *remaining.iter().min().unwrap()
}

/// Picks the extremum of `candidates` by `value`; when several candidates
/// share the extreme value the tie-break policy decides and the second
/// component reports that a tie had to be broken.
pub(crate) fn pick_extremum(
    policy: TieBreakPolicy,
    candidates: &[usize],
    value: impl Fn(usize) -> u64,
    history: &[Vec<Option<u64>>],
    prefer_min: bool,
) -> (usize, bool) {
    debug_assert!(!candidates.is_empty());
    let best = candidates
        .iter()
        .map(|&c| value(c))
        .reduce(|a, b| if prefer_min { a.min(b) } else { a.max(b) })
        .unwrap();
    let tied: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&c| value(c) == best)
        .collect();
    if tied.len() == 1 {
        (tied[0], false)
    } else {
        (break_tie(policy, &tied, history, prefer_min), true)
    }
}
