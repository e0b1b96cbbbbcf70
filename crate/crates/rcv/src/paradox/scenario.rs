//! Ballot modifications: a [`Scenario`] describes moving some ballots
//! from one ranking to another, and [`classify_shift`] decides whether a
//! single move helps or hurts a given candidate.
//!
//! Scenarios have a textual form used in CLI flags and reports:
//!
//! ```text
//! 300 x 'Wright>Kiss>Montroll' -> 'Kiss'; 450 x 'Wright' -> 'Kiss'
//! 10 x 'A>B' -> 'B>A' @P1
//! ```

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::profile::{canonical_ranking, BallotGroup, Profile, Ranking, UNSPECIFIED_PRECINCT};

/// Moves `count` ballots of the `(from, precinct)` group onto the
/// ranking `to`, staying in the same precinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallotShift {
    pub from: Ranking,
    pub to: Ranking,
    pub precinct: String,
    pub count: u64,
}

impl BallotShift {
    pub fn new(from: Ranking, to: Ranking, precinct: impl Into<String>, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument(
                "a ballot shift must move at least one ballot".into(),
            ));
        }
        if from == to {
            return Err(Error::InvalidArgument(
                "a ballot shift must change the ranking".into(),
            ));
        }
        Ok(BallotShift {
            from,
            to,
            precinct: precinct.into(),
            count,
        })
    }

    /// Textual form, e.g. `300 x 'Wright>Kiss>Montroll' -> 'Kiss'`.
    /// The `@precinct` suffix is omitted for the unspecified precinct.
    pub fn display(&self, profile: &Profile) -> String {
        let names = |r: &Ranking| {
            r.entries()
                .iter()
                .map(|&c| profile.candidate_name(c))
                .collect::<Vec<_>>()
                .join(">")
        };
        let mut s = format!(
            "{} x '{}' -> '{}'",
            self.count,
            names(&self.from),
            names(&self.to)
        );
        if self.precinct != UNSPECIFIED_PRECINCT {
            s.push_str(&format!(" @{}", self.precinct));
        }
        s
    }
}

/// A non-empty list of shifts, applied in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    shifts: Vec<BallotShift>,
}

impl Scenario {
    pub fn new(shifts: Vec<BallotShift>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::InvalidArgument(
                "a scenario must contain at least one shift".into(),
            ));
        }
        Ok(Scenario { shifts })
    }

    pub fn shifts(&self) -> &[BallotShift] {
        &self.shifts
    }

    /// Textual form: shifts joined by `; `.
    pub fn display(&self, profile: &Profile) -> String {
        self.shifts
            .iter()
            .map(|s| s.display(profile))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Parses the textual form. Ranking names must match the profile's
    /// roster; rankings are brought to profile-canonical form.
    pub fn parse(text: &str, profile: &Profile) -> Result<Scenario> {
        let mut shifts = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            shifts.push(parse_shift(part, profile)?);
        }
        Scenario::new(shifts)
    }
}

fn parse_shift(text: &str, profile: &Profile) -> Result<BallotShift> {
    let bad = |msg: &str| {
        Error::InvalidArgument(format!(
            "bad shift `{text}`: {msg}; expected `count x 'FROM' -> 'TO' [@precinct]`"
        ))
    };
    let (count_part, rest) = text.split_once('x').ok_or_else(|| bad("missing `x`"))?;
    let count: u64 = count_part
        .trim()
        .parse()
        .map_err(|_| bad("count must be a positive integer"))?;
    let (from_text, rest) = take_quoted(rest).ok_or_else(|| bad("missing quoted FROM ranking"))?;
    let rest = rest
        .trim_start()
        .strip_prefix("->")
        .ok_or_else(|| bad("missing `->`"))?;
    let (to_text, rest) = take_quoted(rest).ok_or_else(|| bad("missing quoted TO ranking"))?;
    let precinct = match rest.trim() {
        "" => UNSPECIFIED_PRECINCT.to_string(),
        tail => tail
            .strip_prefix('@')
            .map(|p| p.trim().to_string())
            .filter(|p| !p.is_empty())
            .ok_or_else(|| bad("trailing text is not an `@precinct` tag"))?,
    };
    let from = parse_ranking_names(from_text, profile).map_err(|e| bad(&e))?;
    let to = parse_ranking_names(to_text, profile).map_err(|e| bad(&e))?;
    BallotShift::new(from, to, precinct, count)
}

/// Extracts the first single-quoted segment, returning it and the rest.
fn take_quoted(text: &str) -> Option<(&str, &str)> {
    let rest = text.trim_start();
    let rest = rest.strip_prefix('\'')?;
    let end = rest.find('\'')?;
    Some((&rest[..end], &rest[end + 1..]))
}

fn parse_ranking_names(text: &str, profile: &Profile) -> std::result::Result<Ranking, String> {
    let mut entries = Vec::new();
    for name in text.split('>') {
        let name = name.trim();
        if name.is_empty() {
            return Err("empty candidate name in ranking".into());
        }
        let index = profile
            .candidate_index(name)
            .ok_or_else(|| format!("`{name}` is not a candidate"))?;
        if entries.contains(&index) {
            return Err(format!("candidate `{name}` appears twice"));
        }
        entries.push(index);
    }
    if entries.is_empty() {
        return Err("a ranking must list at least one candidate".into());
    }
    Ok(canonical_ranking(entries, profile.num_candidates()))
}

/// How a single shift relates to `subject`'s fortunes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftClass {
    /// The subject strictly gains: either the subject's position improves
    /// while every other pair keeps its relative order, or the target is
    /// the subject's bullet ballot.
    Favorable,
    /// The mirror image: the subject is strictly demoted while every
    /// other pair keeps its relative order.
    Unfavorable,
    /// Anything else.
    Neither,
}

/// Classifies a shift for `subject` in an `n`-candidate election. An
/// unranked candidate sits below every ranked position; two unranked
/// candidates are mutually unordered.
pub fn classify_shift(shift: &BallotShift, subject: usize, n: usize) -> ShiftClass {
    let position = |r: &Ranking, c: usize| r.position_of(c).unwrap_or(n);
    let subject_cmp = position(&shift.to, subject).cmp(&position(&shift.from, subject));
    let bullet = shift.to.is_bullet_for(subject);

    let rel = |r: &Ranking, x: usize, y: usize| position(r, x).cmp(&position(r, y));
    let others_preserved = (0..n).all(|x| {
        x == subject
            || (x + 1..n).all(|y| {
                y == subject || rel(&shift.from, x, y) == rel(&shift.to, x, y)
            })
    });

    if bullet || (subject_cmp == Ordering::Less && others_preserved) {
        ShiftClass::Favorable
    } else if subject_cmp == Ordering::Greater && others_preserved {
        ShiftClass::Unfavorable
    } else {
        ShiftClass::Neither
    }
}

/// Applies the shifts in order against the normalized profile:
/// each shift decrements its source group and feeds a group with the
/// target ranking in the same precinct. The total ballot count never
/// changes. Later shifts see the effect of earlier ones.
pub fn apply_scenario(profile: &Profile, scenario: &Scenario) -> Result<Profile> {
    let n = profile.num_candidates();
    let normalized = profile.normalize();
    let mut groups: Vec<BallotGroup> = normalized.groups().to_vec();
    for shift in scenario.shifts() {
        let from = canonical_ranking(shift.from.entries().to_vec(), n);
        let to = canonical_ranking(shift.to.entries().to_vec(), n);
        let insufficient = |available: u64| Error::InsufficientCount {
            shift: shift.display(profile),
            needed: shift.count,
            available,
        };
        let source = groups
            .iter_mut()
            .find(|g| g.ranking == from && g.precinct == shift.precinct)
            .ok_or_else(|| insufficient(0))?;
        if source.count < shift.count {
            return Err(insufficient(source.count));
        }
        source.count -= shift.count;
        if let Some(target) = groups
            .iter_mut()
            .find(|g| g.ranking == to && g.precinct == shift.precinct)
        {
            target.count += shift.count;
        } else {
            groups.push(BallotGroup::with_precinct(
                to.clone(),
                shift.count,
                shift.precinct.clone(),
            ));
        }
        groups.retain(|g| g.count > 0);
    }
    Ok(normalized.rebuild(groups).normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::parse_native;

    fn burlington() -> Profile {
        parse_native(
            "candidates: Kiss, Montroll, Wright\n\
             2043 ; * ; Kiss > Montroll > Wright\n\
             371 ; * ; Kiss > Wright > Montroll\n\
             568 ; * ; Kiss\n\
             1332 ; * ; Montroll > Kiss > Wright\n\
             767 ; * ; Montroll > Wright > Kiss\n\
             455 ; * ; Montroll\n\
             495 ; * ; Wright > Kiss > Montroll\n\
             1513 ; * ; Wright > Montroll > Kiss\n\
             1289 ; * ; Wright\n",
        )
        .unwrap()
    }

    fn ranking(profile: &Profile, names: &[&str]) -> Ranking {
        let entries = names
            .iter()
            .map(|n| profile.candidate_index(n).unwrap())
            .collect();
        Ranking::new(entries).unwrap()
    }

    #[test]
    fn shift_rejects_zero_count_and_no_op() {
        let p = burlington();
        let w = ranking(&p, &["Wright"]);
        let k = ranking(&p, &["Kiss"]);
        assert!(BallotShift::new(w.clone(), k.clone(), "*", 0).is_err());
        assert!(BallotShift::new(w.clone(), w.clone(), "*", 5).is_err());
        assert!(BallotShift::new(w, k, "*", 5).is_ok());
    }

    #[test]
    fn scenario_must_be_non_empty() {
        assert!(Scenario::new(vec![]).is_err());
    }

    #[test]
    fn applies_the_burlington_shift_pair() {
        let p = burlington();
        let scenario = Scenario::parse(
            "300 x 'Wright>Kiss>Montroll' -> 'Kiss'; 450 x 'Wright' -> 'Kiss'",
            &p,
        )
        .unwrap();
        let modified = apply_scenario(&p, &scenario).unwrap();
        assert_eq!(modified.total_ballots(), p.total_ballots());
        let tally = modified.first_place_tally();
        let idx = |name: &str| p.candidate_index(name).unwrap();
        assert_eq!(tally.votes[idx("Kiss")], 3732);
        assert_eq!(tally.votes[idx("Montroll")], 2554);
        assert_eq!(tally.votes[idx("Wright")], 2547);
    }

    #[test]
    fn insufficient_count_names_the_shift() {
        let p = burlington();
        let scenario =
            Scenario::parse("496 x 'Wright>Kiss>Montroll' -> 'Kiss'", &p).unwrap();
        match apply_scenario(&p, &scenario) {
            Err(Error::InsufficientCount {
                shift,
                needed,
                available,
            }) => {
                assert!(shift.contains("Wright>Kiss>Montroll"));
                assert_eq!(needed, 496);
                assert_eq!(available, 495);
            }
            other => panic!("expected insufficient-count, got {other:?}"),
        }
    }

    #[test]
    fn missing_source_group_is_insufficient_at_zero() {
        let p = burlington();
        let scenario = Scenario::parse("5 x 'Kiss>Montroll>Wright' -> 'Kiss' @P9", &p).unwrap();
        assert!(matches!(
            apply_scenario(&p, &scenario),
            Err(Error::InsufficientCount { available: 0, .. })
        ));
    }

    #[test]
    fn scenario_text_round_trips() {
        let p = burlington();
        let text = "300 x 'Wright>Kiss>Montroll' -> 'Kiss'; 450 x 'Wright' -> 'Kiss'";
        let scenario = Scenario::parse(text, &p).unwrap();
        assert_eq!(scenario.display(&p), text);
        assert_eq!(Scenario::parse(&scenario.display(&p), &p).unwrap(), scenario);
    }

    #[test]
    fn classify_matches_the_published_examples() {
        let p = burlington();
        let kiss = p.candidate_index("Kiss").unwrap();
        // Wright bullet converted to a Kiss bullet: favorable to Kiss.
        let shift = BallotShift::new(
            ranking(&p, &["Wright"]),
            ranking(&p, &["Kiss"]),
            "*",
            450,
        )
        .unwrap();
        assert_eq!(classify_shift(&shift, kiss, 3), ShiftClass::Favorable);

        // Moving a candidate from first to second, others fixed: unfavorable.
        let shift = BallotShift::new(
            ranking(&p, &["Kiss", "Montroll", "Wright"]),
            ranking(&p, &["Montroll", "Kiss", "Wright"]),
            "*",
            10,
        )
        .unwrap();
        assert_eq!(classify_shift(&shift, kiss, 3), ShiftClass::Unfavorable);

        // Reversing the other candidates while the subject stays put: neither.
        let shift = BallotShift::new(
            ranking(&p, &["Kiss", "Montroll", "Wright"]),
            ranking(&p, &["Wright", "Montroll", "Kiss"]),
            "*",
            10,
        )
        .unwrap();
        let montroll = p.candidate_index("Montroll").unwrap();
        assert_eq!(classify_shift(&shift, montroll, 3), ShiftClass::Neither);
    }
}
