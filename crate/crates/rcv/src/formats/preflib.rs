//! A strict subset of the PrefLib SOI/TOI format: strict orders,
//! possibly incomplete, never tied.
//!
//! ```text
//! # NUMBER ALTERNATIVES: 3
//! # ALTERNATIVE NAME 1: Kiss
//! # ALTERNATIVE NAME 2: Montroll
//! # ALTERNATIVE NAME 3: Wright
//! 2043: 1,2,3
//! 568: 1
//! ```
//!
//! Unrecognized `#` metadata lines are ignored. Any `{` in a data line
//! is tie syntax and is rejected.

use crate::formats::{ParseError, ParseErrorKind};
use crate::profile::{BallotGroup, Candidate, Profile, Ranking, RESERVED_CHARS};

/// Parses the PrefLib subset. Alternative numbers are 1-based and are
/// mapped to candidate names through the metadata lines; all ballots
/// land in the unspecified precinct. The result is normalized.
pub fn parse_preflib(text: &str) -> std::result::Result<Profile, ParseError> {
    let mut declared: Option<usize> = None;
    let mut names: Vec<Option<String>> = Vec::new();
    let mut roster_checked = false;
    let mut roster: Vec<Candidate> = Vec::new();
    let mut groups: Vec<BallotGroup> = Vec::new();
    let mut running_total: u128 = 0;
    let mut last_line = 0;

    for (number, raw) in text.lines().enumerate() {
        let number = number + 1;
        last_line = number;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            parse_metadata(number, meta.trim(), &mut declared, &mut names)?;
            continue;
        }

        if !roster_checked {
            roster = finish_roster(number, declared, &names)?;
            roster_checked = true;
        }
        if line.contains('{') {
            return Err(ParseError::new(
                number,
                ParseErrorKind::TiesUnsupported,
                "`{...}` tie syntax is not supported; ballots must be strict orders",
            ));
        }
        let Some((count_part, prefs_part)) = line.split_once(':') else {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadCount,
                "expected `count: alt,alt,...`",
            ));
        };
        let count: u64 = count_part.trim().parse().map_err(|_| {
            ParseError::new(
                number,
                ParseErrorKind::BadCount,
                format!("`{}` is not a positive integer ballot count", count_part.trim()),
            )
        })?;
        if count == 0 {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadCount,
                "ballot count must be at least 1",
            ));
        }
        if prefs_part.trim().is_empty() {
            return Err(ParseError::new(
                number,
                ParseErrorKind::EmptyRanking,
                "a ballot must rank at least one alternative",
            ));
        }
        let mut entries: Vec<usize> = Vec::new();
        for token in prefs_part.split(',') {
            let token = token.trim();
            let alt: usize = token.parse().map_err(|_| {
                ParseError::new(
                    number,
                    ParseErrorKind::UnknownCandidate,
                    format!("`{token}` is not an alternative number"),
                )
            })?;
            if alt == 0 || alt > roster.len() {
                return Err(ParseError::new(
                    number,
                    ParseErrorKind::UnknownCandidate,
                    format!("alternative {alt} is out of range 1..={}", roster.len()),
                ));
            }
            let index = alt - 1;
            if entries.contains(&index) {
                return Err(ParseError::new(
                    number,
                    ParseErrorKind::DuplicateCandidateInRanking,
                    format!("alternative {alt} appears twice in the ranking"),
                ));
            }
            entries.push(index);
        }
        running_total += u128::from(count);
        if running_total > u128::from(u64::MAX) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadCount,
                "total ballot count overflows a 64-bit counter",
            ));
        }
        groups.push(BallotGroup::new(
            Ranking::new(entries).expect("non-empty and duplicate-free"),
            count,
        ));
    }

    if !roster_checked {
        roster = finish_roster(last_line.max(1), declared, &names)?;
    }
    let profile = Profile::new(roster, groups).expect("parser enforces profile invariants");
    Ok(profile.normalize())
}

fn parse_metadata(
    number: usize,
    meta: &str,
    declared: &mut Option<usize>,
    names: &mut Vec<Option<String>>,
) -> std::result::Result<(), ParseError> {
    if let Some(value) = meta.strip_prefix("NUMBER ALTERNATIVES:") {
        let n: usize = value.trim().parse().map_err(|_| {
            ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                format!("`{}` is not a number of alternatives", value.trim()),
            )
        })?;
        *declared = Some(n);
        names.resize(n.max(names.len()), None);
        return Ok(());
    }
    if let Some(rest) = meta.strip_prefix("ALTERNATIVE NAME") {
        let Some((index_part, name_part)) = rest.split_once(':') else {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                "expected `# ALTERNATIVE NAME <i>: <name>`",
            ));
        };
        let alt: usize = index_part.trim().parse().map_err(|_| {
            ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                format!("`{}` is not an alternative number", index_part.trim()),
            )
        })?;
        if alt == 0 {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                "alternative numbers are 1-based",
            ));
        }
        let name = name_part.trim();
        if name.is_empty() {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                format!("alternative {alt} has an empty name"),
            ));
        }
        if let Some(c) = name.chars().find(|c| RESERVED_CHARS.contains(c) || *c == '|') {
            return Err(ParseError::new(
                number,
                ParseErrorKind::ReservedCharacter,
                format!("candidate name `{}` contains reserved character `{}`", name, c.escape_default()),
            ));
        }
        if names.len() < alt {
            names.resize(alt, None);
        }
        if names[alt - 1].is_some() {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                format!("alternative {alt} is named twice"),
            ));
        }
        names[alt - 1] = Some(name.to_string());
        return Ok(());
    }
    // Other metadata (FILE NAME, TITLE, ...) is irrelevant here.
    Ok(())
}

fn finish_roster(
    number: usize,
    declared: Option<usize>,
    names: &[Option<String>],
) -> std::result::Result<Vec<Candidate>, ParseError> {
    let Some(n) = declared else {
        return Err(ParseError::new(
            number,
            ParseErrorKind::BadHeader,
            "missing `# NUMBER ALTERNATIVES:` metadata",
        ));
    };
    if names.len() > n {
        return Err(ParseError::new(
            number,
            ParseErrorKind::BadHeader,
            format!(
                "{} alternatives declared but alternative {} is named",
                n,
                names.len()
            ),
        ));
    }
    let mut roster = Vec::with_capacity(n);
    for alt in 1..=n {
        match names.get(alt - 1).and_then(|x| x.as_ref()) {
            Some(name) => roster.push(Candidate::new(name.clone())),
            None => {
                return Err(ParseError::new(
                    number,
                    ParseErrorKind::BadHeader,
                    format!("missing `# ALTERNATIVE NAME {alt}:` metadata"),
                ));
            }
        }
    }
    for (i, c) in roster.iter().enumerate() {
        if roster[..i].iter().any(|other| other.name == c.name) {
            return Err(ParseError::new(
                number,
                ParseErrorKind::BadHeader,
                format!("duplicate candidate name `{}`", c.name),
            ));
        }
    }
    Ok(roster)
}

/// Writes the PrefLib subset. Precinct labels have no representation in
/// PrefLib, so groups differing only by precinct merge.
pub fn write_preflib(profile: &Profile) -> String {
    let normalized = strip_precincts(profile).normalize();
    let mut out = String::new();
    out.push_str(&format!(
        "# NUMBER ALTERNATIVES: {}\n",
        normalized.num_candidates()
    ));
    for (i, c) in normalized.roster().iter().enumerate() {
        out.push_str(&format!("# ALTERNATIVE NAME {}: {}\n", i + 1, c.name));
    }
    for g in normalized.groups() {
        let alts: Vec<String> = g
            .ranking
            .entries()
            .iter()
            .map(|&c| (c + 1).to_string())
            .collect();
        out.push_str(&format!("{}: {}\n", g.count, alts.join(",")));
    }
    out
}

fn strip_precincts(profile: &Profile) -> Profile {
    let groups = profile
        .groups()
        .iter()
        .map(|g| BallotGroup::new(g.ranking.clone(), g.count))
        .collect();
    Profile::new(profile.roster().to_vec(), groups).expect("roster and groups already valid")
}
