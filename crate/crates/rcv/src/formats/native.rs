//! The native `.rcv` profile format: line-oriented and transcribable
//! directly from published election tables.
//!
//! ```text
//! # comment
//! candidates: Kiss, Montroll, Wright
//! 2043 ; * ; Kiss > Montroll > Wright
//! 568 ; * ; Kiss
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Data lines carry
//! `count ; precinct ; ranking`, whitespace around tokens is trimmed,
//! and `*` marks an unspecified precinct.

use crate::formats::{ParseError, ParseErrorKind};
use crate::profile::{BallotGroup, Candidate, Profile, Ranking, RESERVED_CHARS};

fn reserved(label: &str) -> Option<char> {
    label.chars().find(|c| RESERVED_CHARS.contains(c) || *c == '|')
}

/// Parses the native format, returning the normalized profile. Input
/// line order never affects the result.
pub fn parse_native(text: &str) -> std::result::Result<Profile, ParseError> {
    let mut roster: Option<Vec<Candidate>> = None;
    let mut groups: Vec<BallotGroup> = Vec::new();
    let mut running_total: u128 = 0;
    let mut last_line = 0;

    for (number, raw) in text.lines().enumerate() {
        let number = number + 1;
        last_line = number;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if roster.is_none() {
            roster = Some(parse_header(number, line)?);
            continue;
        }
        let known = roster.as_deref().unwrap();

        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() > 3 {
            return Err(ParseError::new(
                number,
                ParseErrorKind::ReservedCharacter,
                "too many `;`-separated fields; `;` may not appear inside a field",
            ));
        }
        if fields.len() < 3 {
            return Err(ParseError::new(
                number,
                ParseErrorKind::EmptyRanking,
                "expected `count ; precinct ; ranking`",
            ));
        }
        let count = parse_count(number, fields[0])?;
        let precinct = fields[1].trim();
        if precinct.is_empty() {
            return Err(ParseError::new(
                number,
                ParseErrorKind::ReservedCharacter,
                "precinct label must be non-empty (use `*` for unspecified)",
            ));
        }
        if let Some(c) = reserved(precinct) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::ReservedCharacter,
                format!("precinct label contains reserved character `{}`", c.escape_default()),
            ));
        }
        let ranking = parse_ranking(number, fields[2], known)?;
        running_total += u128::from(count);
        if running_total > u128::from(u64::MAX) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadCount,
                "total ballot count overflows a 64-bit counter",
            ));
        }
        groups.push(BallotGroup::with_precinct(ranking, count, precinct));
    }

    let Some(roster) = roster else {
        return Err(ParseError::new(
            last_line.max(1),
            ParseErrorKind::BadHeader,
            "missing `candidates:` header line",
        ));
    };
    let profile = Profile::new(roster, groups).expect("parser enforces profile invariants");
    Ok(profile.normalize())
}

fn parse_header(number: usize, line: &str) -> std::result::Result<Vec<Candidate>, ParseError> {
    let Some(rest) = line.strip_prefix("candidates:") else {
        return Err(ParseError::new(
            number,
            ParseErrorKind::BadHeader,
            "first significant line must be `candidates: <name>, <name>, ...`",
        ));
    };
    let mut roster: Vec<Candidate> = Vec::new();
    for name in rest.split(',') {
        let name = name.trim();
        if name.is_empty() {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                "empty candidate name in header",
            ));
        }
        if let Some(c) = reserved(name) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::ReservedCharacter,
                format!("candidate name `{}` contains reserved character `{}`", name, c.escape_default()),
            ));
        }
        if roster.iter().any(|c| c.name == name) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                format!("duplicate candidate name `{name}`"),
            ));
        }
        roster.push(Candidate::new(name));
    }
    Ok(roster)
}

fn parse_count(number: usize, field: &str) -> std::result::Result<u64, ParseError> {
    let token = field.trim();
    let count: u64 = token.parse().map_err(|_| {
        ParseError::new(
            number,
            ParseErrorKind::BadCount,
            format!("`{token}` is not a positive integer ballot count"),
        )
    })?;
    if count == 0 {
        return Err(ParseError::new(
            number,
            ParseErrorKind::BadCount,
            "ballot count must be at least 1",
        ));
    }
    Ok(count)
}

fn parse_ranking(
    number: usize,
    field: &str,
    roster: &[Candidate],
) -> std::result::Result<Ranking, ParseError> {
    if field.trim().is_empty() {
        return Err(ParseError::new(
            number,
            ParseErrorKind::EmptyRanking,
            "a ballot must rank at least one candidate",
        ));
    }
    let mut entries: Vec<usize> = Vec::new();
    for name in field.split('>') {
        let name = name.trim();
        if name.is_empty() {
            return Err(ParseError::new(
                number,
                ParseErrorKind::UnknownCandidate,
                "empty candidate name in ranking",
            ));
        }
        let Some(index) = roster.iter().position(|c| c.name == name) else {
            return Err(ParseError::new(
                number,
                ParseErrorKind::UnknownCandidate,
                format!("`{name}` is not a declared candidate"),
            ));
        };
        if entries.contains(&index) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::DuplicateCandidateInRanking,
                format!("candidate `{name}` appears twice in the ranking"),
            ));
        }
        entries.push(index);
    }
    Ok(Ranking::new(entries).expect("non-empty and duplicate-free"))
}

/// Writes the canonical normalized form: groups merged, length-(n-1)
/// rankings completed, and lines sorted by ranking then precinct.
/// Re-parsing the output reproduces `profile.normalize()` exactly.
pub fn write_native(profile: &Profile) -> String {
    let normalized = profile.normalize();
    let mut out = String::new();
    out.push_str("candidates: ");
    out.push_str(&normalized.candidate_names().join(", "));
    out.push('\n');
    for g in normalized.groups() {
        let names: Vec<&str> = g
            .ranking
            .entries()
            .iter()
            .map(|&c| normalized.candidate_name(c))
            .collect();
        out.push_str(&format!(
            "{} ; {} ; {}\n",
            g.count,
            g.precinct,
            names.join(" > ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# a comment
candidates: A, B, C

2 ; * ; A > B > C
3 ; P1 ; B
1 ; * ; A > B
";

    #[test]
    fn parses_and_normalizes() {
        let p = parse_native(SMALL).unwrap();
        assert_eq!(p.total_ballots(), 6);
        assert_eq!(p.candidate_names(), vec!["A", "B", "C"]);
        // A > B completes to A > B > C and merges with the full ranking.
        assert_eq!(p.groups().len(), 2);
        assert_eq!(p.groups()[0].count, 3);
        assert_eq!(p.groups()[0].ranking.entries(), &[0, 1, 2]);
    }

    #[test]
    fn line_order_does_not_matter() {
        let shuffled = "candidates: A, B, C\n3 ; P1 ; B\n1 ; * ; A > B\n2 ; * ; A > B > C\n";
        assert_eq!(parse_native(SMALL).unwrap(), parse_native(shuffled).unwrap());
    }

    #[test]
    fn duplicate_candidate_in_ranking_is_an_error() {
        let err = parse_native("candidates: A,B\n1 ; * ; A > A\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateCandidateInRanking);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn zero_count_is_an_error() {
        let err = parse_native("candidates: A,B\n0 ; * ; A\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadCount);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn unknown_candidate_is_an_error() {
        let err = parse_native("candidates: A,B\n4 ; * ; A > Z\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownCandidate);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn missing_header_is_an_error() {
        let err = parse_native("1 ; * ; A\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadHeader);
        assert_eq!(err.line, 1);
        let err = parse_native("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadHeader);
    }

    #[test]
    fn reserved_characters_in_header_are_rejected() {
        let err = parse_native("candidates: A>B, C\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ReservedCharacter);
    }

    #[test]
    fn empty_ranking_is_an_error() {
        let err = parse_native("candidates: A,B\n4 ; * ; \n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyRanking);
    }

    #[test]
    fn blank_ballot_line_shape_is_an_error() {
        let err = parse_native("candidates: A,B\n4 ; *\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyRanking);
    }

    #[test]
    fn round_trip_is_the_normal_form() {
        let p = parse_native(SMALL).unwrap();
        let text = write_native(&p);
        assert_eq!(parse_native(&text).unwrap(), p);
        // Writing is deterministic.
        assert_eq!(text, write_native(&p));
    }

    #[test]
    fn writes_header_only_for_empty_groups() {
        let p = parse_native("candidates: A, B\n").unwrap();
        assert_eq!(write_native(&p), "candidates: A, B\n");
    }
}
