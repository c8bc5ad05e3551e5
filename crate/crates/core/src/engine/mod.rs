//! Online algorithms: water-level solver, GreedyAllocation, PrimalDual,
//! the integral greedy baseline, threshold rounding and invariant monitors.

mod csv;
mod invariants;
mod rounding;
mod run;
mod state;
mod steps;
mod water_level;

pub use csv::{parse_trace_csv, write_trace_csv, ParsedTrace, SUMMARY_PREFIX, TRACE_HEADER};
pub use invariants::{check_invariants, InvariantReport};
pub use rounding::{round_bipartite, round_trace, PotentialHistory, RoundedTrace};
pub use run::{
    run_stream, run_stream_with, Algorithm, OnlineRunner, RunOptions, RunTrace, TraceRow,
    BETA_GRID,
};
pub use state::{CoverState, EdgeValue, MatchingState};
pub use steps::{
    greedy_allocation_step, greedy_baseline_step, invariant1_bound, primal_dual_step,
    PrimalDualStep, FEASIBILITY_TOL, INVARIANT_TOL,
};
pub use water_level::{water_level, NeighborPotential, Raise, WaterLevelOutcome};
