//! Detection of voting paradoxes relative to instant-runoff outcomes:
//! monotonicity failures (upward and downward) and consistency failures
//! under two-way splits of the electorate. Every finding carries full
//! evidence: the modification or partition plus complete tabulations of
//! each election involved, so reports are self-verifying.

mod monotonicity;
mod partition;
mod scenario;

pub use monotonicity::{
    search_monotonicity, verify_monotonicity, Direction, MonotonicityFinding, SearchLimits,
};
pub use partition::{
    enumerate_precinct_partitions, search_ballot_partitions, split_by_partition,
    verify_consistency, ConsistencyFinding, Partition, PartitionLevel,
};
pub use scenario::{apply_scenario, classify_shift, BallotShift, Scenario, ShiftClass};
