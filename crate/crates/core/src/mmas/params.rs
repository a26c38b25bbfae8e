use std::time::Duration;

use crate::error::{McspError, Result};
use crate::heuristics::HeuristicWeights;

/// Tuning knobs of the ant system.
///
/// Defaults are the tuned values (`alpha = 2`, `beta = 10`, `epsilon =
/// 0.05`, 100 ants, `p_best = 0.05`, initial pheromone 10) with a desk-scale
/// budget of one 60 s run.
#[derive(Debug, Clone, PartialEq)]
pub struct MmasParams {
    pub alpha: f64,
    pub beta: f64,
    /// Evaporation rate in `(0, 1]`.
    pub epsilon: f64,
    pub n_ants: usize,
    pub p_best: f64,
    pub init_pheromone: f64,
    pub max_time: Duration,
    /// Iterations without improving the global best before a run stops.
    pub max_stale_iterations: u64,
    /// Hard iteration cap per run; `None` leaves only time and staleness.
    pub max_iterations: Option<u64>,
    pub n_runs: usize,
    pub weights: HeuristicWeights,
    pub seed: u64,
    /// Replaces `|E| / n` as the average branching factor in `tau_min`.
    pub avg_override: Option<f64>,
    /// Place ants uniformly at random instead of spreading them evenly.
    pub random_start: bool,
    /// Build the ants of one iteration concurrently. Ignored without the
    /// `parallel` feature; results do not depend on it.
    pub parallel: bool,
}

impl Default for MmasParams {
    fn default() -> Self {
        MmasParams {
            alpha: 2.0,
            beta: 10.0,
            epsilon: 0.05,
            n_ants: 100,
            p_best: 0.05,
            init_pheromone: 10.0,
            max_time: Duration::from_secs(60),
            max_stale_iterations: 500,
            max_iterations: None,
            n_runs: 1,
            weights: HeuristicWeights::default(),
            seed: 0,
            avg_override: None,
            random_start: false,
            parallel: true,
        }
    }
}

fn invalid(name: &'static str, reason: impl Into<String>) -> McspError {
    McspError::InvalidParam {
        name,
        reason: reason.into(),
    }
}

impl MmasParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(invalid("alpha", "must be a finite non-negative number"));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(invalid("beta", "must be a finite non-negative number"));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(invalid("epsilon", "must lie in (0, 1]"));
        }
        if self.n_ants == 0 {
            return Err(invalid("n_ants", "must be positive"));
        }
        if !(self.p_best > 0.0 && self.p_best < 1.0) {
            return Err(invalid("p_best", "must lie in (0, 1)"));
        }
        if !(self.init_pheromone.is_finite() && self.init_pheromone > 0.0) {
            return Err(invalid("init_pheromone", "must be positive"));
        }
        if self.max_stale_iterations == 0 {
            return Err(invalid("max_stale_iterations", "must be positive"));
        }
        if self.max_iterations == Some(0) {
            return Err(invalid("max_iterations", "must be positive"));
        }
        if self.n_runs == 0 {
            return Err(invalid("n_runs", "must be positive"));
        }
        if let Some(avg) = self.avg_override {
            if !(avg.is_finite() && avg > 1.0) {
                return Err(invalid("avg", "must exceed 1"));
            }
        }
        self.weights.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = MmasParams::default();
        p.validate().unwrap();
        assert_eq!((p.alpha, p.beta, p.epsilon), (2.0, 10.0, 0.05));
        assert_eq!((p.n_ants, p.p_best, p.init_pheromone), (100, 0.05, 10.0));
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            MmasParams {
                epsilon: 0.0,
                ..Default::default()
            },
            MmasParams {
                epsilon: 1.5,
                ..Default::default()
            },
            MmasParams {
                n_ants: 0,
                ..Default::default()
            },
            MmasParams {
                p_best: 1.0,
                ..Default::default()
            },
            MmasParams {
                init_pheromone: -1.0,
                ..Default::default()
            },
            MmasParams {
                n_runs: 0,
                ..Default::default()
            },
            MmasParams {
                avg_override: Some(1.0),
                ..Default::default()
            },
            MmasParams {
                max_iterations: Some(0),
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }
}
