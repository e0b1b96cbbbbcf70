//! Command-line surface over the `rcv` library. The dispatcher is a
//! plain function from argv to (exit code, stdout, stderr) so the whole
//! surface is testable in-process; `main` only forwards streams.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use rcv::error::Error;
use rcv::formats::{
    parse_native, parse_preflib, write_native, write_preflib, write_report, AllReport, Analysis,
    BordaReport, CondorcetReport, IrvReport, PluralityReport,
};
use rcv::methods::{
    borda, irv, majority_cycle, pairwise_matrix, plurality, BordaConvention, CycleReport,
    IrvOutcome, IrvRound, PairwiseMatrix, TieBreakPolicy,
};
use rcv::paradox::{
    enumerate_precinct_partitions, search_ballot_partitions, search_monotonicity,
    verify_monotonicity, ConsistencyFinding, Direction, MonotonicityFinding, PartitionLevel,
    Scenario, SearchLimits,
};
use rcv::profile::Profile;

/// Success.
pub const EXIT_OK: u8 = 0;
/// Unknown flags, malformed flag values, unsupported conversions.
pub const EXIT_USAGE: u8 = 2;
/// Unreadable or invalid input data.
pub const EXIT_INPUT: u8 = 3;
/// An internal invariant was violated.
pub const EXIT_INTERNAL: u8 = 4;

/// Everything a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Successful command output; `stderr` carries warnings only.
#[derive(Debug, Default)]
struct CommandOutput {
    stdout: String,
    stderr: String,
}

impl From<String> for CommandOutput {
    fn from(stdout: String) -> Self {
        CommandOutput {
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "rcv",
    about = "Ranked-choice election analysis: tabulation and paradox search",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate an election under one or all methods.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum, default_value_t = ConventionArg::Average)]
        borda_convention: ConventionArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the full instant-runoff round trace.
    Rounds {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the pairwise matchup matrix.
    Matrix {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for voting paradoxes.
    #[command(subcommand)]
    Paradox(ParadoxCommand),
    /// Convert between profile formats (by file extension: .rcv, .soi, .toi).
    Convert { input: PathBuf, output: PathBuf },
    /// Check a concrete paradox scenario.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum ParadoxCommand {
    /// Search for monotonicity paradoxes.
    Monotonic {
        file: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        /// Shift sizes are multiples of this.
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Stop after evaluating this many scenarios.
        #[arg(long, default_value_t = 100_000)]
        max_scenarios: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search for consistency paradoxes.
    Consistency {
        file: PathBuf,
        #[arg(long, value_enum)]
        level: LevelArg,
        /// Seed for the ballot-level randomized search.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Trials for the ballot-level randomized search.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Verify a monotonicity scenario such as
    /// `300 x 'Wright>Kiss>Montroll' -> 'Kiss'; 450 x 'Wright' -> 'Kiss'`.
    Monotonic {
        file: PathBuf,
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        subject: String,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Plurality,
    Irv,
    Borda,
    Condorcet,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Zero,
    Average,
    Last,
}

impl From<ConventionArg> for BordaConvention {
    fn from(value: ConventionArg) -> Self {
        match value {
            ConventionArg::Zero => BordaConvention::Zero,
            ConventionArg::Average => BordaConvention::Average,
            ConventionArg::Last => BordaConvention::Last,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Up,
    Down,
}

impl From<DirectionArg> for Direction {
    fn from(value: DirectionArg) -> Self {
        match value {
            DirectionArg::Up => Direction::Up,
            DirectionArg::Down => Direction::Down,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Precinct,
    Ballot,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

/// Maps a library error arising from file contents to an exit code.
fn input_failure(path: &Path, err: Error) -> Failure {
    let code = match err {
        Error::NoWinner => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    };
    Failure {
        code,
        message: format!("rcv: {}: {}", path.display(), err),
    }
}

/// Runs one command. Never panics on bad input; the returned outcome
/// carries exactly what the process should print and exit with.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(output) => Outcome {
            code: EXIT_OK,
            stdout: output.stdout,
            stderr: output.stderr,
        },
        Err(failure) => Outcome {
            code: failure.code,
            stdout: String::new(),
            stderr: ensure_newline(failure.message),
        },
    }
}

fn ensure_newline(mut text: String) -> String {
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn dispatch(command: Command) -> Result<CommandOutput, Failure> {
    match command {
        Command::Analyze {
            file,
            method,
            borda_convention,
            json,
        } => analyze(&file, method, borda_convention.into(), json).map(Into::into),
        Command::Rounds { file, json } => rounds(&file, json).map(Into::into),
        Command::Matrix { file, json } => matrix(&file, json).map(Into::into),
        Command::Paradox(ParadoxCommand::Monotonic {
            file,
            direction,
            step,
            max_scenarios,
            json,
        }) => paradox_monotonic(&file, direction.into(), step, max_scenarios, json).map(Into::into),
        Command::Paradox(ParadoxCommand::Consistency {
            file,
            level,
            seed,
            trials,
            json,
        }) => paradox_consistency(&file, level, seed, trials, json).map(Into::into),
        Command::Convert { input, output } => convert(&input, &output),
        Command::Verify(VerifyCommand::Monotonic {
            file,
            scenario,
            subject,
            direction,
            json,
        }) => verify_monotonic(&file, &scenario, &subject, direction.into(), json).map(Into::into),
    }
}

/// Loads a profile, choosing the parser by file extension (`.soi` and
/// `.toi` are PrefLib; everything else is the native format).
fn load_profile(path: &Path) -> Result<Profile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| Failure::input(format!("rcv: {}: {}", path.display(), err)))?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let parsed = match ext.as_str() {
        "soi" | "toi" => parse_preflib(&text),
        _ => parse_native(&text),
    };
    parsed.map_err(|err| Failure::input(format!("rcv: {}:{}", path.display(), err)))
}

fn json_text(value: &AllReport) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn profile_header(profile: &Profile) -> String {
    format!(
        "candidates: {}\nballots: {}\n",
        profile.candidate_names().join(", "),
        profile.total_ballots()
    )
}

/// `Kiss 4314, Wright 4064` for the continuing candidates of a round.
fn round_summary(profile: &Profile, round: &IrvRound) -> String {
    round
        .tallies
        .iter()
        .enumerate()
        .filter_map(|(c, t)| t.map(|v| format!("{} {}", profile.candidate_name(c), v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn tie_note(tie_broken: bool) -> &'static str {
    if tie_broken {
        " [tie broken]"
    } else {
        ""
    }
}

fn analyze(
    path: &Path,
    method: Method,
    convention: BordaConvention,
    json: bool,
) -> Result<String, Failure> {
    let profile = load_profile(path)?;
    let fail = |err| input_failure(path, err);
    match method {
        Method::Plurality => {
            let result = plurality(&profile, TieBreakPolicy::Backward).map_err(fail)?;
            Ok(if json {
                write_report(&profile, &Analysis::Plurality(&result))
            } else {
                profile_header(&profile) + &plurality_text(&profile, &result)
            })
        }
        Method::Irv => {
            let outcome = irv(&profile, TieBreakPolicy::Backward).map_err(fail)?;
            Ok(if json {
                write_report(&profile, &Analysis::Irv(&outcome))
            } else {
                profile_header(&profile) + &irv_text(&profile, &outcome)
            })
        }
        Method::Borda => {
            let result = borda(&profile, convention, TieBreakPolicy::Backward).map_err(fail)?;
            Ok(if json {
                write_report(&profile, &Analysis::Borda(&result))
            } else {
                profile_header(&profile) + &borda_text(&profile, &result)
            })
        }
        Method::Condorcet => {
            let report = majority_cycle(&pairwise_matrix(&profile));
            Ok(if json {
                write_report(&profile, &Analysis::Condorcet(&report))
            } else {
                profile_header(&profile) + &condorcet_text(&profile, &report)
            })
        }
        Method::All => {
            let plurality_result = plurality(&profile, TieBreakPolicy::Backward).map_err(fail)?;
            let irv_outcome = irv(&profile, TieBreakPolicy::Backward).map_err(fail)?;
            let borda_result =
                borda(&profile, convention, TieBreakPolicy::Backward).map_err(fail)?;
            let cycle_report = majority_cycle(&pairwise_matrix(&profile));
            if json {
                let reports = vec![
                    serde_json::to_value(PluralityReport::new(&profile, &plurality_result))
                        .expect("serializable"),
                    serde_json::to_value(IrvReport::new(&profile, &irv_outcome))
                        .expect("serializable"),
                    serde_json::to_value(BordaReport::new(&profile, &borda_result))
                        .expect("serializable"),
                    serde_json::to_value(CondorcetReport::new(&profile, &cycle_report))
                        .expect("serializable"),
                ];
                Ok(json_text(&AllReport::new(&profile, reports)))
            } else {
                Ok(profile_header(&profile)
                    + &plurality_text(&profile, &plurality_result)
                    + &irv_text(&profile, &irv_outcome)
                    + &borda_text(&profile, &borda_result)
                    + &condorcet_text(&profile, &cycle_report))
            }
        }
    }
}

fn plurality_text(profile: &Profile, result: &rcv::methods::PluralityResult) -> String {
    format!(
        "plurality winner: {} ({} first-place votes){}\n",
        profile.candidate_name(result.winner),
        result.tally.votes[result.winner],
        tie_note(result.tie_broken),
    )
}

fn irv_text(profile: &Profile, outcome: &IrvOutcome) -> String {
    let last = outcome.final_round();
    format!(
        "irv winner: {} (final round: {}; exhausted {}){}\n",
        profile.candidate_name(outcome.winner),
        round_summary(profile, last),
        last.cumulative_exhausted,
        tie_note(last.tie_broken),
    )
}

fn borda_text(profile: &Profile, result: &rcv::methods::BordaResult) -> String {
    let scores = result
        .scores
        .iter()
        .enumerate()
        .map(|(c, s)| format!("{} {}", profile.candidate_name(c), s))
        .collect::<Vec<_>>()
        .join(", ");
    format!(
        "borda winner: {} (convention {}; scores: {}){}\n",
        profile.candidate_name(result.winner),
        result.convention,
        scores,
        tie_note(result.tie_broken),
    )
}

fn condorcet_text(profile: &Profile, report: &CycleReport) -> String {
    let mut out = match report.condorcet_winner {
        Some(c) => format!("condorcet winner: {}\n", profile.candidate_name(c)),
        None => "condorcet winner: none\n".to_string(),
    };
    match &report.cycle {
        Some(cycle) => {
            let mut names: Vec<&str> = cycle
                .iter()
                .map(|&c| profile.candidate_name(c))
                .collect();
            names.push(profile.candidate_name(cycle[0]));
            out.push_str(&format!("majority cycle: {}\n", names.join(" -> ")));
        }
        None => out.push_str("majority cycle: none\n"),
    }
    if report.has_pairwise_tie {
        out.push_str("note: at least one matchup is exactly tied\n");
    }
    out
}

fn rounds(path: &Path, json: bool) -> Result<String, Failure> {
    let profile = load_profile(path)?;
    let outcome = irv(&profile, TieBreakPolicy::Backward).map_err(|e| input_failure(path, e))?;
    if json {
        return Ok(write_report(&profile, &Analysis::Irv(&outcome)));
    }
    let mut out = profile_header(&profile);
    for round in &outcome.rounds {
        out.push_str(&format!(
            "round {}: {}\n",
            round.number,
            round_summary(&profile, round)
        ));
        if let Some(eliminated) = round.eliminated {
            let transfers = round
                .transfers
                .iter()
                .enumerate()
                .filter(|&(c, &t)| t > 0 && c != eliminated)
                .map(|(c, &t)| format!("{} +{}", profile.candidate_name(c), t))
                .collect::<Vec<_>>()
                .join(", ");
            let transfers = if transfers.is_empty() {
                "none".to_string()
            } else {
                transfers
            };
            out.push_str(&format!(
                "  eliminated {}{}; transfers: {}; exhausted {}\n",
                profile.candidate_name(eliminated),
                tie_note(round.tie_broken),
                transfers,
                round.exhausted_this_round,
            ));
        }
    }
    out.push_str(&format!(
        "winner: {} ({}){}\n",
        profile.candidate_name(outcome.winner),
        outcome.stop_reason.as_str(),
        tie_note(outcome.final_round().tie_broken),
    ));
    Ok(out)
}

fn matrix(path: &Path, json: bool) -> Result<String, Failure> {
    let profile = load_profile(path)?;
    let matrix = pairwise_matrix(&profile);
    if json {
        return Ok(write_report(&profile, &Analysis::Pairwise(&matrix)));
    }
    Ok(profile_header(&profile) + &matrix_text(&profile, &matrix))
}

fn matrix_text(profile: &Profile, matrix: &PairwiseMatrix) -> String {
    let n = profile.num_candidates();
    let names = profile.candidate_names();
    let cell = |a: usize, b: usize| {
        if a == b {
            "-".to_string()
        } else {
            matrix.over(a, b).to_string()
        }
    };
    let width = names
        .iter()
        .map(|s| s.len())
        .chain((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| cell(a, b).len()))
        .max()
        .unwrap_or(1);
    let mut out = String::from("pairwise matchups (row over column):\n");
    out.push_str(&format!("{:width$}", "", width = width + 2));
    for name in &names {
        out.push_str(&format!("  {name:>width$}"));
    }
    out.push('\n');
    for (a, name) in names.iter().enumerate() {
        out.push_str(&format!("{:<width$}", name, width = width + 2));
        for b in 0..n {
            out.push_str(&format!("  {:>width$}", cell(a, b)));
        }
        out.push('\n');
    }
    out
}

fn paradox_monotonic(
    path: &Path,
    direction: Direction,
    step: u64,
    max_scenarios: u64,
    json: bool,
) -> Result<String, Failure> {
    if step == 0 {
        return Err(Failure::usage("rcv: --step must be at least 1"));
    }
    let profile = load_profile(path)?;
    let limits = SearchLimits {
        max_scenarios,
        step,
    };
    let findings = search_monotonicity(&profile, direction, limits);
    if json {
        return Ok(write_report(
            &profile,
            &Analysis::Monotonicity {
                direction,
                findings: &findings,
            },
        ));
    }
    let mut out = profile_header(&profile);
    out.push_str(&format!(
        "monotonicity search: direction {}, step {}, max scenarios {}\n",
        direction.as_str(),
        step,
        max_scenarios
    ));
    out.push_str(&format!("findings: {}\n", findings.len()));
    for (i, finding) in findings.iter().enumerate() {
        out.push_str(&monotonicity_finding_text(&profile, i + 1, finding));
    }
    Ok(out)
}

fn monotonicity_finding_text(
    profile: &Profile,
    index: usize,
    finding: &MonotonicityFinding,
) -> String {
    format!(
        "[{}] subject {} ({})\n    scenario: {}\n    original winner: {} (final round: {})\n    modified winner: {} (final round: {})\n",
        index,
        profile.candidate_name(finding.subject),
        finding.direction.as_str(),
        finding.scenario.display(profile),
        profile.candidate_name(finding.original.winner),
        round_summary(profile, finding.original.final_round()),
        profile.candidate_name(finding.modified.winner),
        round_summary(profile, finding.modified.final_round()),
    )
}

fn paradox_consistency(
    path: &Path,
    level: LevelArg,
    seed: u64,
    trials: u64,
    json: bool,
) -> Result<String, Failure> {
    let profile = load_profile(path)?;
    let (level, findings) = match level {
        LevelArg::Precinct => (
            PartitionLevel::Precinct,
            enumerate_precinct_partitions(&profile).map_err(|e| input_failure(path, e))?,
        ),
        LevelArg::Ballot => (
            PartitionLevel::Ballot,
            search_ballot_partitions(&profile, seed, trials)
                .map_err(|e| input_failure(path, e))?,
        ),
    };
    if json {
        return Ok(write_report(
            &profile,
            &Analysis::Consistency {
                level,
                findings: &findings,
            },
        ));
    }
    let mut out = profile_header(&profile);
    match level {
        PartitionLevel::Precinct => {
            out.push_str("consistency search: level precinct (exhaustive)\n")
        }
        PartitionLevel::Ballot => out.push_str(&format!(
            "consistency search: level ballot, seed {seed}, trials {trials}\n"
        )),
    }
    out.push_str(&format!("findings: {}\n", findings.len()));
    for (i, finding) in findings.iter().enumerate() {
        out.push_str(&consistency_finding_text(&profile, i + 1, finding));
    }
    Ok(out)
}

fn consistency_finding_text(
    profile: &Profile,
    index: usize,
    finding: &ConsistencyFinding,
) -> String {
    let normalized = profile.normalize();
    let partition_line = match finding.partition.level {
        PartitionLevel::Precinct => {
            let side1 = finding.partition.side1_precincts(&normalized);
            let side2: Vec<String> = normalized
                .precinct_labels()
                .into_iter()
                .filter(|l| !side1.contains(l))
                .collect();
            format!("precincts {}|{}", side1.join(","), side2.join(","))
        }
        PartitionLevel::Ballot => {
            let side1: u64 = finding.partition.side1.iter().sum();
            format!(
                "ballot-level split (side 1: {} ballots, side 2: {} ballots)",
                side1,
                normalized.total_ballots() - side1
            )
        }
    };
    format!(
        "[{}] subject {}\n    partition: {}\n    side 1 winner: {} (final round: {})\n    side 2 winner: {} (final round: {})\n    combined winner: {} (final round: {})\n",
        index,
        profile.candidate_name(finding.subject),
        partition_line,
        profile.candidate_name(finding.outcome1.winner),
        round_summary(profile, finding.outcome1.final_round()),
        profile.candidate_name(finding.outcome2.winner),
        round_summary(profile, finding.outcome2.final_round()),
        profile.candidate_name(finding.combined.winner),
        round_summary(profile, finding.combined.final_round()),
    )
}

fn convert(input: &Path, output: &Path) -> Result<CommandOutput, Failure> {
    let ext = |p: &Path| {
        p.extension()
            .and_then(|e| e.to_str())
            .unwrap_or("")
            .to_ascii_lowercase()
    };
    let out_ext = ext(output);
    if !matches!(ext(input).as_str(), "rcv" | "soi" | "toi")
        || !matches!(out_ext.as_str(), "rcv" | "soi" | "toi")
    {
        return Err(Failure::usage(
            "rcv: convert infers formats from extensions; use .rcv, .soi, or .toi",
        ));
    }
    let profile = load_profile(input)?;
    let text = match out_ext.as_str() {
        "rcv" => write_native(&profile),
        _ => write_preflib(&profile),
    };
    std::fs::write(output, text)
        .map_err(|err| Failure::input(format!("rcv: {}: {}", output.display(), err)))?;
    let mut result = CommandOutput::default();
    if out_ext != "rcv" && profile.precinct_labels().len() > 1 {
        result.stderr =
            "rcv: warning: precinct labels are not representable in PrefLib output and were merged\n"
                .to_string();
    }
    Ok(result)
}

fn verify_monotonic(
    path: &Path,
    scenario_text: &str,
    subject_name: &str,
    direction: Direction,
    json: bool,
) -> Result<String, Failure> {
    let profile = load_profile(path)?;
    let scenario = Scenario::parse(scenario_text, &profile)
        .map_err(|err| Failure::usage(format!("rcv: {err}")))?;
    let Some(subject) = profile.candidate_index(subject_name) else {
        return Err(Failure::usage(format!(
            "rcv: `{subject_name}` is not a candidate in {}",
            path.display()
        )));
    };
    let finding = verify_monotonicity(&profile, &scenario, subject, direction)
        .map_err(|err| input_failure(path, err))?;
    let findings: Vec<MonotonicityFinding> = finding.into_iter().collect();
    if json {
        return Ok(write_report(
            &profile,
            &Analysis::Monotonicity {
                direction,
                findings: &findings,
            },
        ));
    }
    let mut out = profile_header(&profile);
    if findings.is_empty() {
        out.push_str(&format!(
            "no monotonicity paradox: the {} scenario does not flip the outcome against {}\n",
            direction.as_str(),
            subject_name
        ));
    } else {
        out.push_str("monotonicity paradox verified\n");
        out.push_str(&monotonicity_finding_text(&profile, 1, &findings[0]));
    }
    Ok(out)
}
