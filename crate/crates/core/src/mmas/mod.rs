//! MAX-MIN ant system over the common substring graph.
//!
//! Each iteration builds `n_ants` solutions against a frozen pheromone
//! table, keeps the iteration best, then evaporates, deposits from either
//! the iteration best or the global best according to a staged schedule,
//! and clamps every trail into `[tau_min, tau_max]`.

mod construct;
mod params;
mod pheromone;
mod solver;

pub use construct::{
    choose_edge, choose_match, construct_solution, edge_probabilities, edge_weights, roulette,
    start_position, EdgeWeight, Solution,
};
pub use params::MmasParams;
pub use pheromone::{
    compute_bounds, deposit_source, effective_bounds, mean_branching, Bounds, DepositSource,
    PheromoneTable,
};
pub use solver::{
    build_colony, initialize, scheduled_update, solve, solve_graph, IterationRecord, IterationView,
    RunSummary, SearchState, SolveOutcome, Telemetry,
};
