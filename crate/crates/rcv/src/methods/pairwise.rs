use crate::profile::Profile;

/// Head-to-head counts: `m[a][b]` is the number of ballots ranking `a`
/// above `b`. A ballot ranking `a` but not `b` counts for `a`; a ballot
/// ranking neither counts for neither. The diagonal is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseMatrix {
    counts: Vec<Vec<u64>>,
}

impl PairwiseMatrix {
    pub fn num_candidates(&self) -> usize {
        self.counts.len()
    }

    /// Ballots ranking `a` above `b`.
    pub fn over(&self, a: usize, b: usize) -> u64 {
        self.counts[a][b]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// True if `a` wins the head-to-head matchup against `b` outright.
    pub fn beats(&self, a: usize, b: usize) -> bool {
        self.counts[a][b] > self.counts[b][a]
    }
}

/// Builds the full pairwise matchup matrix for a profile.
pub fn pairwise_matrix(profile: &Profile) -> PairwiseMatrix {
    let n = profile.num_candidates();
    let mut counts = vec![vec![0u64; n]; n];
    for g in profile.groups() {
        let entries = g.ranking.entries();
        // Ranked-vs-ranked pairs: earlier position wins.
        for (i, &a) in entries.iter().enumerate() {
            for &b in &entries[i + 1..] {
                counts[a][b] += g.count;
            }
        }
        // Ranked-vs-unranked pairs: the ranked candidate wins.
        if entries.len() < n {
            let mut ranked = vec![false; n];
            for &a in entries {
                ranked[a] = true;
            }
            for &a in entries {
                for b in 0..n {
                    if !ranked[b] {
                        counts[a][b] += g.count;
                    }
                }
            }
        }
    }
    PairwiseMatrix { counts }
}

/// The unique candidate that beats every other candidate head-to-head,
/// if one exists. A tied matchup blocks strict domination.
pub fn condorcet_winner(matrix: &PairwiseMatrix) -> Option<usize> {
    let n = matrix.num_candidates();
    (0..n).find(|&a| (0..n).all(|b| a == b || matrix.beats(a, b)))
}

/// Cycle analysis of the strict majority digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub condorcet_winner: Option<usize>,
    /// A shortest directed cycle c1 -> c2 -> ... -> ck -> c1 in the
    /// majority digraph, chosen deterministically: smallest starting
    /// index first, then lexicographically smallest path. `None` when
    /// the majority relation is acyclic.
    pub cycle: Option<Vec<usize>>,
    /// Some pair of distinct candidates split their matchup exactly.
    pub has_pairwise_tie: bool,
}

/// Reports the Condorcet winner (if any), a canonical shortest majority
/// cycle (if any), and whether any matchup is tied. In a tie-free
/// profile with no Condorcet winner, a cycle always exists.
pub fn majority_cycle(matrix: &PairwiseMatrix) -> CycleReport {
    let n = matrix.num_candidates();
    let has_pairwise_tie = (0..n).any(|a| {
        (a + 1..n).any(|b| matrix.over(a, b) == matrix.over(b, a))
    });
    CycleReport {
        condorcet_winner: condorcet_winner(matrix),
        cycle: shortest_cycle(matrix),
        has_pairwise_tie,
    }
}

/// Iterative-deepening search for the canonical shortest cycle. Both
/// directions of an edge can never hold at once, so cycles have length
/// at least 3; rosters are small, so exhaustive search is fine.
fn shortest_cycle(matrix: &PairwiseMatrix) -> Option<Vec<usize>> {
    let n = matrix.num_candidates();
    for len in 3..=n {
        for start in 0..n {
            let mut path = vec![start];
            if extend_cycle(matrix, start, len, &mut path) {
                return Some(path);
            }
        }
    }
    None
}

fn extend_cycle(matrix: &PairwiseMatrix, start: usize, len: usize, path: &mut Vec<usize>) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return matrix.beats(last, start);
    }
    // Only visit indices above `start`, so the smallest cycle member is
    // the starting point and each rotation is produced once.
    for next in start + 1..matrix.num_candidates() {
        if !path.contains(&next) && matrix.beats(last, next) {
            path.push(next);
            if extend_cycle(matrix, start, len, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{BallotGroup, Candidate, Ranking};

    fn profile(names: &[&str], groups: &[(&[usize], u64)]) -> Profile {
        Profile::new(
            names.iter().map(|n| Candidate::new(*n)).collect(),
            groups
                .iter()
                .map(|(r, c)| BallotGroup::new(Ranking::new(r.to_vec()).unwrap(), *c))
                .collect(),
        )
        .unwrap()
        .normalize()
    }

    #[test]
    fn single_truncated_ballot_counts_ranked_over_unranked() {
        // One ballot A > B over {A, B, C}.
        let p = Profile::new(
            vec![
                Candidate::new("A"),
                Candidate::new("B"),
                Candidate::new("C"),
            ],
            vec![BallotGroup::new(Ranking::new(vec![0, 1]).unwrap(), 1)],
        )
        .unwrap();
        let m = pairwise_matrix(&p);
        assert_eq!(m.over(0, 1), 1);
        assert_eq!(m.over(0, 2), 1);
        assert_eq!(m.over(1, 2), 1);
        assert_eq!(m.over(1, 0), 0);
        assert_eq!(m.over(2, 0), 0);
        assert_eq!(m.over(2, 1), 0);
    }

    #[test]
    fn ballots_ranking_neither_count_for_neither() {
        let p = profile(&["A", "B", "C"], &[(&[0], 4), (&[1, 2, 0], 1)]);
        let m = pairwise_matrix(&p);
        // The 4 bullet ballots rank neither B nor C.
        assert_eq!(m.over(1, 2) + m.over(2, 1), 1);
    }

    #[test]
    fn unanimous_profile_is_transitive() {
        let p = profile(&["A", "B", "C"], &[(&[0, 1, 2], 9)]);
        let report = majority_cycle(&pairwise_matrix(&p));
        assert_eq!(report.condorcet_winner, Some(0));
        assert_eq!(report.cycle, None);
        assert!(!report.has_pairwise_tie);
    }

    #[test]
    fn rock_paper_scissors_has_a_cycle_and_no_winner() {
        let p = profile(
            &["A", "B", "C"],
            &[(&[0, 1, 2], 3), (&[1, 2, 0], 3), (&[2, 0, 1], 3)],
        );
        let report = majority_cycle(&pairwise_matrix(&p));
        assert_eq!(report.condorcet_winner, None);
        assert_eq!(report.cycle, Some(vec![0, 1, 2]));
        assert!(!report.has_pairwise_tie);
    }

    #[test]
    fn exact_pairwise_tie_blocks_the_winner_and_is_reported() {
        let p = profile(&["A", "B"], &[(&[0, 1], 2), (&[1, 0], 2)]);
        let report = majority_cycle(&pairwise_matrix(&p));
        assert_eq!(report.condorcet_winner, None);
        assert_eq!(report.cycle, None);
        assert!(report.has_pairwise_tie);
    }
}
