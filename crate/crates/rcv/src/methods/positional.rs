use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::methods::{pick_extremum, TieBreakPolicy};
use crate::profile::{Profile, Tally};

/// Plurality outcome: most first-place votes wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluralityResult {
    pub winner: usize,
    pub tally: Tally,
    /// The leading tally was shared and the tie-break policy decided.
    pub tie_broken: bool,
}

/// Declares as winner the candidate with the most first-place votes.
pub fn plurality(profile: &Profile, policy: TieBreakPolicy) -> Result<PluralityResult> {
    if profile.num_candidates() == 0 {
        return Err(Error::InvalidArgument(
            "cannot run plurality on an empty roster".into(),
        ));
    }
    if profile.total_ballots() == 0 {
        return Err(Error::InvalidArgument(
            "cannot run plurality without any ballots".into(),
        ));
    }
    let tally = profile.first_place_tally();
    let candidates: Vec<usize> = (0..profile.num_candidates()).collect();
    let (winner, tie_broken) =
        pick_extremum(policy, &candidates, |c| tally.votes[c], &[], false);
    Ok(PluralityResult {
        winner,
        tally,
        tie_broken,
    })
}

/// What a ballot awards to the candidates it leaves unranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BordaConvention {
    /// Unranked candidates score nothing.
    Zero,
    /// Each unranked candidate scores the mean of the point values the
    /// ballot left unassigned; every ballot then hands out exactly
    /// n(n+1)/2 points in total.
    #[default]
    Average,
    /// Each unranked candidate scores 1, as if tied for last place.
    Last,
}

impl BordaConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            BordaConvention::Zero => "zero",
            BordaConvention::Average => "average",
            BordaConvention::Last => "last",
        }
    }
}

impl fmt::Display for BordaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An exact Borda score. Averaging a run of consecutive integers can
/// yield a half, and nothing else, so the score is stored as a count of
/// half-points and never touches floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct BordaScore {
    half_points: u64,
}

impl BordaScore {
    pub fn from_half_points(half_points: u64) -> Self {
        BordaScore { half_points }
    }

    pub fn half_points(&self) -> u64 {
        self.half_points
    }

    pub fn is_integral(&self) -> bool {
        self.half_points.is_multiple_of(2)
    }
}

impl fmt::Display for BordaScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_points.is_multiple_of(2) {
            write!(f, "{}", self.half_points / 2)
        } else {
            write!(f, "{}.5", self.half_points / 2)
        }
    }
}

impl Serialize for BordaScore {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integral() {
            serializer.serialize_u64(self.half_points / 2)
        } else {
            // Halves of u64-sized integers this small are exact in f64.
            serializer.serialize_f64(self.half_points as f64 / 2.0)
        }
    }
}

/// Borda outcome with exact per-candidate scores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BordaResult {
    pub scores: Vec<BordaScore>,
    pub winner: usize,
    pub convention: BordaConvention,
    pub tie_broken: bool,
}

/// Positional scoring: with n candidates, position i (1-based) earns
/// n-i+1 points; unranked candidates score per the convention.
pub fn borda(
    profile: &Profile,
    convention: BordaConvention,
    policy: TieBreakPolicy,
) -> Result<BordaResult> {
    let n = profile.num_candidates();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cannot run Borda on an empty roster".into(),
        ));
    }
    let mut half_points = vec![0u64; n];
    for g in profile.groups() {
        let ranked = g.ranking.len() as u64;
        for (pos, &c) in g.ranking.entries().iter().enumerate() {
            half_points[c] += g.count * 2 * (n as u64 - pos as u64);
        }
        if ranked == n as u64 {
            continue;
        }
        // Unassigned point values are 1..=(n-ranked); their mean is
        // (n-ranked+1)/2, i.e. n-ranked+1 half-points.
        let per_unranked_half = match convention {
            BordaConvention::Zero => 0,
            BordaConvention::Average => n as u64 - ranked + 1,
            BordaConvention::Last => 2,
        };
        if per_unranked_half > 0 {
            for (c, points) in half_points.iter_mut().enumerate() {
                if !g.ranking.contains(c) {
                    *points += g.count * per_unranked_half;
                }
            }
        }
    }
    let scores: Vec<BordaScore> = half_points
        .into_iter()
        .map(BordaScore::from_half_points)
        .collect();
    let candidates: Vec<usize> = (0..n).collect();
    let (winner, tie_broken) = pick_extremum(
        policy,
        &candidates,
        |c| scores[c].half_points(),
        &[],
        false,
    );
    Ok(BordaResult {
        scores,
        winner,
        convention,
        tie_broken,
    })
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
    fn plurality_picks_the_largest_first_place_tally() {
        let p = profile(&["A", "B"], &[(&[0, 1], 3), (&[1, 0], 5)]);
        let r = plurality(&p, TieBreakPolicy::Backward).unwrap();
        assert_eq!(r.winner, 1);
        assert!(!r.tie_broken);
    }

    #[test]
    fn plurality_flags_forced_ties() {
        let p = profile(&["A", "B"], &[(&[0, 1], 5), (&[1, 0], 5)]);
        let r = plurality(&p, TieBreakPolicy::Backward).unwrap();
        assert_eq!(r.winner, 0);
        assert!(r.tie_broken);
    }

    #[test]
    fn plurality_rejects_empty_profiles() {
        let p = profile(&["A", "B"], &[]);
        assert!(plurality(&p, TieBreakPolicy::Backward).is_err());
    }

    #[test]
    fn borda_full_rankings_score_identically_under_all_conventions() {
        let p = profile(&["A", "B", "C"], &[(&[0, 1, 2], 2), (&[2, 1, 0], 1)]);
        let zero = borda(&p, BordaConvention::Zero, TieBreakPolicy::Backward).unwrap();
        let avg = borda(&p, BordaConvention::Average, TieBreakPolicy::Backward).unwrap();
        let last = borda(&p, BordaConvention::Last, TieBreakPolicy::Backward).unwrap();
        assert_eq!(zero.scores, avg.scores);
        assert_eq!(zero.scores, last.scores);
        // A: 2*3 + 1 = 7, B: 2*2 + 2 = 6, C: 2*1 + 3 = 5.
        assert_eq!(
            zero.scores,
            vec![
                BordaScore::from_half_points(14),
                BordaScore::from_half_points(12),
                BordaScore::from_half_points(10)
            ]
        );
    }

    #[test]
    fn borda_truncation_conventions_differ_as_specified() {
        // One bullet ballot for A over {A, B, C}: A scores 3 everywhere;
        // B and C score 0 / 1.5 / 1 under zero / average / last.
        let p = profile(&["A", "B", "C"], &[(&[0], 1)]);
        let score =
            |conv: BordaConvention| borda(&p, conv, TieBreakPolicy::Backward).unwrap().scores;
        assert_eq!(score(BordaConvention::Zero)[1].half_points(), 0);
        assert_eq!(score(BordaConvention::Average)[1].half_points(), 3);
        assert_eq!(score(BordaConvention::Last)[1].half_points(), 2);
        assert_eq!(score(BordaConvention::Average)[0].half_points(), 6);
    }

    #[test]
    fn borda_average_hands_out_a_fixed_total_per_ballot() {
        let p = profile(
            &["A", "B", "C", "D"],
            &[(&[2], 3), (&[1, 3], 2), (&[0, 1, 2, 3], 1)],
        );
        let r = borda(&p, BordaConvention::Average, TieBreakPolicy::Backward).unwrap();
        let total_half: u64 = r.scores.iter().map(|s| s.half_points()).sum();
        let n = 4u64;
        assert_eq!(total_half, p.total_ballots() * n * (n + 1));
    }

    #[test]
    fn borda_score_formats_halves() {
        assert_eq!(BordaScore::from_half_points(36851).to_string(), "18425.5");
        assert_eq!(BordaScore::from_half_points(29760).to_string(), "14880");
    }
}
