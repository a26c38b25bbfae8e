//! The outer loop: iterations of the colony, pheromone schedule, restarts.

use std::io::Write;
use std::time::{Duration, Instant};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::csgraph::CommonSubstringGraph;
use crate::error::Result;
use crate::seeding::stream;

use super::construct::{construct_solution, Solution};
use super::pheromone::{
    deposit_source, effective_bounds, mean_branching, DepositSource, PheromoneTable,
};
use super::MmasParams;

/// Per-run search bookkeeping.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub iteration_best: Option<Solution>,
    pub global_best: Option<Solution>,
    /// 1-based counter of the iteration in progress or just finished.
    pub iteration: u64,
    /// Iterations since the global best last improved.
    pub stale: u64,
    pub started: Instant,
    pub time_to_best: Duration,
    pub iteration_of_best: u64,
}

impl SearchState {
    fn new() -> Self {
        SearchState {
            iteration_best: None,
            global_best: None,
            iteration: 0,
            stale: 0,
            started: Instant::now(),
            time_to_best: Duration::ZERO,
            iteration_of_best: 0,
        }
    }

    /// Installs the iteration best and promotes it when it beats the
    /// global best. Returns whether the global best improved.
    pub fn record_iteration(&mut self, best: Solution) -> bool {
        let improved = self
            .global_best
            .as_ref()
            .is_none_or(|gb| best.cost() < gb.cost());
        if improved {
            self.global_best = Some(best.clone());
            self.time_to_best = self.started.elapsed();
            self.iteration_of_best = self.iteration;
            self.stale = 0;
        } else {
            self.stale += 1;
        }
        self.iteration_best = Some(best);
        improved
    }
}

/// Fresh trails at the initial level and zeroed counters.
pub fn initialize(g: &CommonSubstringGraph, params: &MmasParams) -> (PheromoneTable, SearchState) {
    (
        PheromoneTable::new(g, params.init_pheromone),
        SearchState::new(),
    )
}

/// Evaporation, one scheduled deposit, then bounds from the global best.
pub fn scheduled_update(
    state: &SearchState,
    g: &CommonSubstringGraph,
    tau: &mut PheromoneTable,
    params: &MmasParams,
) -> DepositSource {
    let (Some(iteration_best), Some(global_best)) = (&state.iteration_best, &state.global_best)
    else {
        panic!("scheduled_update before the first iteration completed");
    };
    tau.evaporate(params.epsilon);
    let source = deposit_source(state.iteration);
    match source {
        DepositSource::IterationBest => tau.deposit(iteration_best, params.epsilon),
        DepositSource::GlobalBest => tau.deposit(global_best, params.epsilon),
    }
    let avg = params.avg_override.unwrap_or_else(|| mean_branching(g));
    tau.clamp(effective_bounds(
        global_best.cost(),
        params.epsilon,
        params.p_best,
        g.len(),
        avg,
    ));
    source
}

/// One telemetry row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationRecord {
    pub run: usize,
    pub iteration: u64,
    pub best_cost_iter: usize,
    pub best_cost_global: usize,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub run: usize,
    pub iterations: u64,
    pub best_cost: usize,
    pub iteration_of_best: u64,
    pub time_to_best: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct Telemetry {
    pub iterations: Vec<IterationRecord>,
    pub runs: Vec<RunSummary>,
}

impl Telemetry {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "run",
            "iteration",
            "best_cost_iter",
            "best_cost_global",
            "elapsed_ms",
        ])?;
        for r in &self.iterations {
            w.write_record([
                r.run.to_string(),
                r.iteration.to_string(),
                r.best_cost_iter.to_string(),
                r.best_cost_global.to_string(),
                r.elapsed_ms.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn total_iterations(&self) -> u64 {
        self.runs.iter().map(|r| r.iterations).sum()
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub best: Solution,
    pub run_of_best: usize,
    /// Time from the start of the winning run until its best was found.
    pub time_to_best: Duration,
    pub telemetry: Telemetry,
}

/// Read-only snapshot handed to observers after every pheromone update.
pub struct IterationView<'a> {
    pub run: usize,
    pub state: &'a SearchState,
    pub pheromone: &'a PheromoneTable,
    pub source: DepositSource,
}

/// Solves one instance from its strings.
pub fn solve(x: &[u8], y: &[u8], params: &MmasParams) -> Result<SolveOutcome> {
    params.validate()?;
    let g = CommonSubstringGraph::build(x, y)?;
    Ok(solve_graph(&g, params, |_| {}))
}

/// Builds the ants of one iteration. Each ant draws from its own stream,
/// so the result is the same whether or not they run concurrently.
pub fn build_colony(
    g: &CommonSubstringGraph,
    tau: &PheromoneTable,
    params: &MmasParams,
    run: usize,
    iteration: u64,
) -> Vec<Solution> {
    let build = |ant: usize| {
        let mut rng = stream(params.seed, &[run as u64, iteration, ant as u64]);
        construct_solution(g, tau, params, ant, &mut rng)
    };
    #[cfg(feature = "parallel")]
    if params.parallel {
        return (0..params.n_ants).into_par_iter().map(build).collect();
    }
    (0..params.n_ants).map(build).collect()
}

/// Runs the colony on a prebuilt graph; `observe` sees every iteration
/// right after its pheromone update.
pub fn solve_graph<F>(g: &CommonSubstringGraph, params: &MmasParams, mut observe: F) -> SolveOutcome
where
    F: FnMut(&IterationView<'_>),
{
    let started = Instant::now();
    let mut telemetry = Telemetry::default();
    let mut overall: Option<(Solution, usize, Duration)> = None;

    for run in 0..params.n_runs {
        let (mut tau, mut state) = initialize(g, params);
        loop {
            state.iteration += 1;
            let colony = build_colony(g, &tau, params, run, state.iteration);
            let best = colony
                .into_iter()
                .min_by_key(Solution::cost)
                .expect("colony has at least one ant");
            let best_cost = best.cost();
            state.record_iteration(best);
            let source = scheduled_update(&state, g, &mut tau, params);

            let global_cost = state
                .global_best
                .as_ref()
                .map_or(usize::MAX, Solution::cost);
            telemetry.iterations.push(IterationRecord {
                run,
                iteration: state.iteration,
                best_cost_iter: best_cost,
                best_cost_global: global_cost,
                elapsed_ms: started.elapsed().as_millis(),
            });
            observe(&IterationView {
                run,
                state: &state,
                pheromone: &tau,
                source,
            });

            let out_of_time = state.started.elapsed() >= params.max_time;
            let out_of_iterations = params
                .max_iterations
                .is_some_and(|cap| state.iteration >= cap);
            if out_of_time || out_of_iterations || state.stale >= params.max_stale_iterations {
                break;
            }
        }

        let global_best = state
            .global_best
            .take()
            .expect("at least one iteration ran");
        telemetry.runs.push(RunSummary {
            run,
            iterations: state.iteration,
            best_cost: global_best.cost(),
            iteration_of_best: state.iteration_of_best,
            time_to_best: state.time_to_best,
        });
        let better = overall
            .as_ref()
            .is_none_or(|(best, _, _)| global_best.cost() < best.cost());
        if better {
            overall = Some((global_best, run, state.time_to_best));
        }
    }

    let (best, run_of_best, time_to_best) = overall.expect("n_runs is positive");
    SolveOutcome {
        best,
        run_of_best,
        time_to_best,
        telemetry,
    }
}
