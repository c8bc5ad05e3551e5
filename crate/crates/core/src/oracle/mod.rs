//! Exact offline optima used as the yardstick for competitive ratios.

mod brute;
mod flow;
mod graph;
mod hopcroft_karp;
mod prefix;
mod ratio;
mod solve;

pub use brute::{brute_force_half_integral, BRUTE_FORCE_LIMIT};
pub use flow::FlowNetwork;
pub use graph::StaticGraph;
pub use hopcroft_karp::{hopcroft_karp, BipartiteAdjacency, MaxMatching};
pub use prefix::{final_optimum, prefix_optima, IncrementalMatching};
pub use ratio::{competitive_ratio, Objective, RatioMode};
pub use solve::{
    fractional_optima_general, max_matching_bipartite, offline_optimum, OracleMode, OracleResult,
};
