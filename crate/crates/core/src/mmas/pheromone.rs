//! Pheromone trails, their bounds and the staged update schedule.

use crate::csgraph::{CommonSubstringGraph, EdgeId};
use crate::error::{McspError, Result};

use super::Solution;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub tau_max: f64,
    pub tau_min: f64,
}

/// One trail value per edge block of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneTable {
    tau: Vec<f64>,
    bounds: Option<Bounds>,
}

impl PheromoneTable {
    /// Every edge starts at `init`; no bounds until a global best exists.
    pub fn new(g: &CommonSubstringGraph, init: f64) -> Self {
        PheromoneTable {
            tau: vec![init; g.edge_count()],
            bounds: None,
        }
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    #[inline]
    pub fn get(&self, edge: EdgeId) -> f64 {
        self.tau[edge]
    }

    pub fn values(&self) -> &[f64] {
        &self.tau
    }

    pub fn bounds(&self) -> Option<Bounds> {
        self.bounds
    }

    /// Multiplies every trail by `1 - epsilon`.
    pub fn evaporate(&mut self, epsilon: f64) {
        let keep = 1.0 - epsilon;
        self.tau.iter_mut().for_each(|t| *t *= keep);
    }

    /// Adds `epsilon / cost` to every edge used by `solution`.
    pub fn deposit(&mut self, solution: &Solution, epsilon: f64) {
        let amount = epsilon * solution.fitness();
        for &e in &solution.edges {
            self.tau[e] += amount;
        }
    }

    /// Installs new bounds and clamps every trail into them.
    pub fn clamp(&mut self, bounds: Bounds) {
        self.bounds = Some(bounds);
        for t in &mut self.tau {
            *t = t.clamp(bounds.tau_min, bounds.tau_max);
        }
    }

    pub fn within_bounds(&self) -> bool {
        match self.bounds {
            None => true,
            Some(b) => {
                b.tau_min <= b.tau_max && self.tau.iter().all(|&t| b.tau_min <= t && t <= b.tau_max)
            }
        }
    }
}

/// `tau_max = 1 / (epsilon * cost)` and
/// `tau_min = tau_max (1 - p^(1/n)) / ((avg - 1) p^(1/n))`.
pub fn compute_bounds(
    cost_gb: usize,
    epsilon: f64,
    p_best: f64,
    n: usize,
    avg: f64,
) -> Result<Bounds> {
    if avg.is_nan() || avg <= 1.0 {
        return Err(McspError::DegenerateBranching(avg));
    }
    let tau_max = 1.0 / (epsilon * cost_gb as f64);
    let root = p_best.powf(1.0 / n as f64);
    let tau_min = tau_max * (1.0 - root) / ((avg - 1.0) * root);
    Ok(Bounds { tau_max, tau_min })
}

/// Bounds actually installed by the solver: `tau_min` is capped at
/// `tau_max`, and a graph with a single choice per step collapses the
/// interval to `tau_max`.
pub fn effective_bounds(cost_gb: usize, epsilon: f64, p_best: f64, n: usize, avg: f64) -> Bounds {
    match compute_bounds(cost_gb, epsilon, p_best, n, avg) {
        Ok(b) => Bounds {
            tau_max: b.tau_max,
            tau_min: b.tau_min.min(b.tau_max),
        },
        Err(_) => {
            let tau_max = 1.0 / (epsilon * cost_gb as f64);
            Bounds {
                tau_max,
                tau_min: tau_max,
            }
        }
    }
}

/// Which solution reinforces the trails after an iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepositSource {
    IterationBest,
    GlobalBest,
}

/// The staged schedule keyed by the 1-based iteration counter.
pub fn deposit_source(iteration: u64) -> DepositSource {
    let period = match iteration {
        0..=50 => return DepositSource::IterationBest,
        51..=100 => 5,
        101..=200 => 4,
        201..=400 => 3,
        401..=800 => 2,
        _ => return DepositSource::IterationBest,
    };
    if iteration.is_multiple_of(period) {
        DepositSource::IterationBest
    } else {
        DepositSource::GlobalBest
    }
}

/// Average branching factor `|E| / n`.
pub fn mean_branching(g: &CommonSubstringGraph) -> f64 {
    g.edge_count() as f64 / g.len() as f64
}
