//! Machine-readable JSON reports with a fixed schema. Serialization is
//! deterministic: field order is fixed, candidates appear in roster
//! order, and integers are emitted without exponents or fractions.

use serde::Serialize;

use crate::methods::{
    BordaResult, CycleReport, IrvOutcome, IrvRound, PairwiseMatrix, PluralityResult,
};
use crate::paradox::{
    ConsistencyFinding, Direction, MonotonicityFinding, Partition, PartitionLevel, Scenario,
};
use crate::profile::Profile;

/// Version tag carried by every report.
pub const SCHEMA_VERSION: u32 = 1;

/// Any analysis result that can be rendered as a report.
#[derive(Debug, Clone)]
pub enum Analysis<'a> {
    Plurality(&'a PluralityResult),
    Irv(&'a IrvOutcome),
    Borda(&'a BordaResult),
    Pairwise(&'a PairwiseMatrix),
    Condorcet(&'a CycleReport),
    Monotonicity {
        direction: Direction,
        findings: &'a [MonotonicityFinding],
    },
    Consistency {
        level: PartitionLevel,
        findings: &'a [ConsistencyFinding],
    },
}

/// Renders an analysis as pretty-printed JSON. Equal inputs produce
/// byte-identical output.
pub fn write_report(profile: &Profile, analysis: &Analysis) -> String {
    match analysis {
        Analysis::Plurality(r) => to_json(&PluralityReport::new(profile, r)),
        Analysis::Irv(o) => to_json(&IrvReport::new(profile, o)),
        Analysis::Borda(r) => to_json(&BordaReport::new(profile, r)),
        Analysis::Pairwise(m) => to_json(&PairwiseReport::new(profile, m)),
        Analysis::Condorcet(c) => to_json(&CondorcetReport::new(profile, c)),
        Analysis::Monotonicity {
            direction,
            findings,
        } => to_json(&MonotonicityReport::new(profile, *direction, findings)),
        Analysis::Consistency { level, findings } => {
            to_json(&ConsistencyReport::new(profile, *level, findings))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn name_of(profile: &Profile, candidate: usize) -> String {
    profile.candidate_name(candidate).to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct PluralityReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    pub winner: String,
    pub tallies: Vec<u64>,
    pub tie_broken: bool,
}

impl PluralityReport {
    pub fn new(profile: &Profile, result: &PluralityResult) -> Self {
        PluralityReport {
            schema: SCHEMA_VERSION,
            kind: "plurality",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            winner: name_of(profile, result.winner),
            tallies: result.tally.votes.clone(),
            tie_broken: result.tie_broken,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct RoundBody {
    number: u32,
    tallies: Vec<Option<u64>>,
    eliminated: Option<String>,
    transfers: Option<Vec<Option<u64>>>,
    exhausted: u64,
    tie_broken: bool,
}

#[derive(Debug, Clone, Serialize)]
struct IrvBody {
    winner: String,
    stop_reason: &'static str,
    rounds: Vec<RoundBody>,
}

impl IrvBody {
    fn new(profile: &Profile, outcome: &IrvOutcome) -> Self {
        IrvBody {
            winner: name_of(profile, outcome.winner),
            stop_reason: outcome.stop_reason.as_str(),
            rounds: outcome
                .rounds
                .iter()
                .map(|r| round_body(profile, r))
                .collect(),
        }
    }
}

fn round_body(profile: &Profile, round: &IrvRound) -> RoundBody {
    let transfers = round.eliminated.map(|eliminated| {
        round
            .tallies
            .iter()
            .enumerate()
            .map(|(c, tally)| match tally {
                Some(_) if c != eliminated => Some(round.transfers[c]),
                _ => None,
            })
            .collect()
    });
    RoundBody {
        number: round.number,
        tallies: round.tallies.clone(),
        eliminated: round.eliminated.map(|c| name_of(profile, c)),
        transfers,
        exhausted: round.exhausted_this_round,
        tie_broken: round.tie_broken,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IrvReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    #[serde(flatten)]
    body: IrvBody,
}

impl IrvReport {
    pub fn new(profile: &Profile, outcome: &IrvOutcome) -> Self {
        IrvReport {
            schema: SCHEMA_VERSION,
            kind: "irv",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            body: IrvBody::new(profile, outcome),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BordaReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    pub convention: &'static str,
    pub winner: String,
    pub scores: Vec<crate::methods::BordaScore>,
    pub tie_broken: bool,
}

impl BordaReport {
    pub fn new(profile: &Profile, result: &BordaResult) -> Self {
        BordaReport {
            schema: SCHEMA_VERSION,
            kind: "borda",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            convention: result.convention.as_str(),
            winner: name_of(profile, result.winner),
            scores: result.scores.clone(),
            tie_broken: result.tie_broken,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairwiseReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    /// `matrix[a][b]` = ballots ranking candidate `a` above candidate `b`.
    pub matrix: Vec<Vec<u64>>,
}

impl PairwiseReport {
    pub fn new(profile: &Profile, matrix: &PairwiseMatrix) -> Self {
        PairwiseReport {
            schema: SCHEMA_VERSION,
            kind: "pairwise",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            matrix: matrix.rows().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CondorcetReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub winner: Option<String>,
    pub cycle: Option<Vec<String>>,
    pub has_pairwise_tie: bool,
}

impl CondorcetReport {
    pub fn new(profile: &Profile, report: &CycleReport) -> Self {
        CondorcetReport {
            schema: SCHEMA_VERSION,
            kind: "condorcet",
            candidates: profile.candidate_names(),
            winner: report.condorcet_winner.map(|c| name_of(profile, c)),
            cycle: report
                .cycle
                .as_ref()
                .map(|cycle| cycle.iter().map(|&c| name_of(profile, c)).collect()),
            has_pairwise_tie: report.has_pairwise_tie,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct ShiftBody {
    count: u64,
    from: Vec<String>,
    to: Vec<String>,
    precinct: String,
}

#[derive(Debug, Clone, Serialize)]
struct ScenarioBody {
    text: String,
    shifts: Vec<ShiftBody>,
}

impl ScenarioBody {
    fn new(profile: &Profile, scenario: &Scenario) -> Self {
        ScenarioBody {
            text: scenario.display(profile),
            shifts: scenario
                .shifts()
                .iter()
                .map(|s| ShiftBody {
                    count: s.count,
                    from: s.from.entries().iter().map(|&c| name_of(profile, c)).collect(),
                    to: s.to.entries().iter().map(|&c| name_of(profile, c)).collect(),
                    precinct: s.precinct.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct MonotonicityFindingBody {
    subject: String,
    direction: &'static str,
    scenario: ScenarioBody,
    original: IrvBody,
    modified: IrvBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    pub direction: &'static str,
    findings: Vec<MonotonicityFindingBody>,
}

impl MonotonicityReport {
    pub fn new(
        profile: &Profile,
        direction: Direction,
        findings: &[MonotonicityFinding],
    ) -> Self {
        MonotonicityReport {
            schema: SCHEMA_VERSION,
            kind: "monotonicity",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            direction: direction.as_str(),
            findings: findings
                .iter()
                .map(|f| MonotonicityFindingBody {
                    subject: name_of(profile, f.subject),
                    direction: f.direction.as_str(),
                    scenario: ScenarioBody::new(profile, &f.scenario),
                    original: IrvBody::new(profile, &f.original),
                    modified: IrvBody::new(profile, &f.modified),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct SliceBody {
    ranking: Vec<String>,
    precinct: String,
    side1: u64,
    side2: u64,
}

#[derive(Debug, Clone, Serialize)]
struct PartitionBody {
    level: &'static str,
    text: Option<String>,
    slices: Vec<SliceBody>,
}

impl PartitionBody {
    fn new(profile: &Profile, partition: &Partition) -> Self {
        let normalized = profile.normalize();
        let text = match partition.level {
            PartitionLevel::Precinct => {
                let side1 = partition.side1_precincts(&normalized);
                let side2: Vec<String> = normalized
                    .precinct_labels()
                    .into_iter()
                    .filter(|l| !side1.contains(l))
                    .collect();
                Some(format!("{}|{}", side1.join(","), side2.join(",")))
            }
            PartitionLevel::Ballot => None,
        };
        let slices = partition
            .side1
            .iter()
            .zip(normalized.groups())
            .map(|(&side1, g)| SliceBody {
                ranking: g
                    .ranking
                    .entries()
                    .iter()
                    .map(|&c| name_of(&normalized, c))
                    .collect(),
                precinct: g.precinct.clone(),
                side1,
                side2: g.count - side1,
            })
            .collect();
        PartitionBody {
            level: partition.level.as_str(),
            text,
            slices,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct ConsistencyFindingBody {
    subject: String,
    partition: PartitionBody,
    side1: IrvBody,
    side2: IrvBody,
    combined: IrvBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    pub level: &'static str,
    findings: Vec<ConsistencyFindingBody>,
}

impl ConsistencyReport {
    pub fn new(
        profile: &Profile,
        level: PartitionLevel,
        findings: &[ConsistencyFinding],
    ) -> Self {
        ConsistencyReport {
            schema: SCHEMA_VERSION,
            kind: "consistency",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            level: level.as_str(),
            findings: findings
                .iter()
                .map(|f| ConsistencyFindingBody {
                    subject: name_of(profile, f.subject),
                    partition: PartitionBody::new(profile, &f.partition),
                    side1: IrvBody::new(profile, &f.outcome1),
                    side2: IrvBody::new(profile, &f.outcome2),
                    combined: IrvBody::new(profile, &f.combined),
                })
                .collect(),
        }
    }
}

/// Wrapper for `analyze --method all`: one report carrying the four
/// individual analyses.
#[derive(Debug, Clone, Serialize)]
pub struct AllReport {
    pub schema: u32,
    pub kind: &'static str,
    pub candidates: Vec<String>,
    pub total_ballots: u64,
    pub reports: Vec<serde_json::Value>,
}

impl AllReport {
    pub fn new(profile: &Profile, reports: Vec<serde_json::Value>) -> Self {
        AllReport {
            schema: SCHEMA_VERSION,
            kind: "all",
            candidates: profile.candidate_names(),
            total_ballots: profile.total_ballots(),
            reports,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::parse_native;
    use crate::methods::{borda, irv, plurality, BordaConvention, TieBreakPolicy};
    use crate::paradox::{search_ballot_partitions, PartitionLevel};

    fn small() -> Profile {
        parse_native("candidates: A, B, C\n4 ; * ; A > B > C\n3 ; * ; B\n2 ; * ; C > B\n")
            .unwrap()
    }

    #[test]
    fn irv_report_shape_is_stable() {
        let p = small();
        let outcome = irv(&p, TieBreakPolicy::Backward).unwrap();
        let text = write_report(&p, &Analysis::Irv(&outcome));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["kind"], "irv");
        // C is eliminated and transfers to B, who then beats A 5-4.
        assert_eq!(v["winner"], "B");
        assert!(v["rounds"].is_array());
        // Byte-identical across runs.
        assert_eq!(text, write_report(&p, &Analysis::Irv(&outcome)));
    }

    #[test]
    fn integers_are_emitted_without_fraction() {
        let p = small();
        let result = borda(&p, BordaConvention::Average, TieBreakPolicy::Backward).unwrap();
        let text = write_report(&p, &Analysis::Borda(&result));
        // A scores 4*3 + 3*1.5 + 2*1 = 18.5; B scores 4*2 + 3*3 + 2*2 = 21.
        assert!(text.contains("18.5"));
        assert!(text.contains(" 21,") || text.contains(" 21\n"));
        assert!(!text.contains("21.0"));
    }

    #[test]
    fn plurality_report_carries_tallies_by_index() {
        let p = small();
        let result = plurality(&p, TieBreakPolicy::Backward).unwrap();
        let text = write_report(&p, &Analysis::Plurality(&result));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["tallies"][0], 4);
        assert_eq!(v["tallies"][1], 3);
        assert_eq!(v["tallies"][2], 2);
    }

    #[test]
    fn empty_findings_render_as_an_empty_array() {
        let p = parse_native("candidates: A, B\n5 ; * ; A > B\n1 ; * ; B > A\n").unwrap();
        let findings = search_ballot_partitions(&p, 1, 50).unwrap();
        assert!(findings.is_empty());
        let text = write_report(
            &p,
            &Analysis::Consistency {
                level: PartitionLevel::Ballot,
                findings: &findings,
            },
        );
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["findings"], serde_json::json!([]));
    }
}
