//! Ranked-choice election analysis.
//!
//! This crate tabulates ballot profiles under plurality, instant-runoff
//! (IRV), Borda, and pairwise/Condorcet analysis, and detects three
//! families of voting paradoxes relative to IRV:
//!
//! - **monotonicity failures**: a winner undone by gaining support, or a
//!   loser rescued by losing it;
//! - **Condorcet cycles**: non-transitive majority preferences;
//! - **consistency failures**: a candidate who wins both halves of a
//!   split electorate but loses the combined election.
//!
//! Ballot data is held exactly (unsigned 64-bit counts, half-point exact
//! Borda scores); no tally ever touches floating point. Profiles are
//! immutable after construction and every operation is a pure function,
//! so values can be shared freely across threads. The randomized
//! searches derive one random stream per trial from the seed, which
//! makes their results independent of worker count.
//!
//! ```
//! use rcv::formats::parse_native;
//! use rcv::methods::{irv, TieBreakPolicy};
//!
//! let profile = parse_native(
//!     "candidates: A, B, C\n4 ; * ; A > B\n3 ; * ; B\n2 ; * ; C > B\n",
//! )?;
//! let outcome = irv(&profile, TieBreakPolicy::Backward)?;
//! // C is eliminated first and its ballots flow to B, who overtakes A.
//! assert_eq!(profile.candidate_name(outcome.winner), "B");
//! # Ok::<(), rcv::Error>(())
//! ```

pub mod error;
pub mod formats;
pub mod methods;
pub mod paradox;
pub mod profile;

pub use error::{Error, Result};
pub use profile::{BallotGroup, Candidate, Profile, Ranking, Tally};
