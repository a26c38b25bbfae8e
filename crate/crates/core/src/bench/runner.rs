//! Runs a set of algorithms over a set of instances.

use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::dataset::Instance;
use super::report::{RunResult, TrialRecord};
use crate::blocks::{validate_common_partition, CommonPartition};
use crate::error::{McspError, Result};
use crate::exact::exact_mcsp;
use crate::greedy::greedy_mcsp;
use crate::heuristics::HeuristicWeights;
use crate::mmas::{solve, MmasParams};
use crate::seeding::derive_seed;

#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmKind {
    Greedy,
    Exact { limit: usize },
    Mmas(Box<MmasParams>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    /// Label used in the CSV files.
    pub name: String,
    pub kind: AlgorithmKind,
}

impl AlgorithmSpec {
    pub fn greedy() -> Self {
        AlgorithmSpec {
            name: "greedy".into(),
            kind: AlgorithmKind::Greedy,
        }
    }

    pub fn exact(limit: usize) -> Self {
        AlgorithmSpec {
            name: "exact".into(),
            kind: AlgorithmKind::Exact { limit },
        }
    }

    pub fn mmas(name: &str, params: MmasParams) -> Self {
        AlgorithmSpec {
            name: name.into(),
            kind: AlgorithmKind::Mmas(Box::new(params)),
        }
    }

    /// The colony with and without the dynamic heuristic, named `mmas` and
    /// `mmas-static`.
    pub fn ablation_pair(params: &MmasParams) -> [Self; 2] {
        let a = params.weights.a;
        let static_only = MmasParams {
            weights: HeuristicWeights { a, b: 0.0 },
            ..params.clone()
        };
        [
            Self::mmas("mmas", params.clone()),
            Self::mmas("mmas-static", static_only),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub repeats: usize,
    pub seed: u64,
    /// Significance level of the t-test.
    pub alpha: f64,
    /// Store wall-clock times. Turn off for byte-reproducible files.
    pub record_time: bool,
    /// Benchmark instances concurrently.
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            repeats: 15,
            seed: 0,
            alpha: 0.05,
            record_time: true,
            parallel: true,
        }
    }
}

/// A trial that could not be completed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialFailure {
    pub instance: String,
    pub algorithm: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchResult {
    pub records: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
}

fn checked(inst: &Instance, cp: &CommonPartition) -> Result<usize> {
    validate_common_partition(cp, &inst.x, &inst.y).map_err(|reason| McspError::InvalidParam {
        name: "solution",
        reason: format!("invalid common partition ({reason})"),
    })?;
    Ok(cp.cost())
}

fn run_once(
    inst: &Instance,
    algo: &AlgorithmSpec,
    seed: u64,
    cfg: &BenchConfig,
) -> Result<RunResult> {
    let started = Instant::now();
    let (cost, time, iterations) = match &algo.kind {
        AlgorithmKind::Greedy => {
            let cp = greedy_mcsp(&inst.x, &inst.y)?;
            (checked(inst, &cp)?, started.elapsed(), 0)
        }
        AlgorithmKind::Exact { limit } => {
            let sol = exact_mcsp(&inst.x, &inst.y, *limit)?;
            let cost = checked(inst, &sol.witness)?;
            debug_assert_eq!(cost, sol.cost);
            (cost, started.elapsed(), 0)
        }
        AlgorithmKind::Mmas(params) => {
            let params = MmasParams {
                seed,
                parallel: params.parallel && cfg.parallel,
                ..(**params).clone()
            };
            let out = solve(&inst.x, &inst.y, &params)?;
            let cost = checked(inst, &out.best.partition)?;
            (cost, out.time_to_best, out.telemetry.total_iterations())
        }
    };
    Ok(RunResult {
        cost,
        time_to_best_secs: if cfg.record_time {
            time.as_secs_f64()
        } else {
            0.0
        },
        iterations,
    })
}

fn bench_instance(
    index: usize,
    inst: &Instance,
    algos: &[AlgorithmSpec],
    cfg: &BenchConfig,
) -> BenchResult {
    let mut out = BenchResult::default();
    let fail = |algorithm: &str, e: McspError| TrialFailure {
        instance: inst.id.clone(),
        algorithm: algorithm.to_string(),
        error: e.to_string(),
    };
    let baseline = match greedy_mcsp(&inst.x, &inst.y).and_then(|cp| checked(inst, &cp)) {
        Ok(c) => c,
        Err(e) => {
            out.failures.push(fail("greedy", e));
            return out;
        }
    };
    for (a, algo) in algos.iter().enumerate() {
        let runs: Result<Vec<RunResult>> = (0..cfg.repeats)
            .map(|r| {
                run_once(
                    inst,
                    algo,
                    derive_seed(cfg.seed, &[index as u64, a as u64, r as u64]),
                    cfg,
                )
            })
            .collect();
        let record = runs.and_then(|runs| {
            TrialRecord::from_runs(&inst.id, inst.len(), &algo.name, runs, baseline, cfg.alpha)
        });
        match record {
            Ok(r) => out.records.push(r),
            Err(e) => out.failures.push(fail(&algo.name, e)),
        }
    }
    out
}

/// Runs every algorithm `cfg.repeats` times on every instance. Each run
/// gets its own seed derived from the root seed, the instance index, the
/// algorithm index and the repetition, so the output does not depend on
/// scheduling. Failures are collected and the remaining trials still run.
pub fn run_benchmark(
    instances: &[Instance],
    algos: &[AlgorithmSpec],
    cfg: &BenchConfig,
) -> Result<BenchResult> {
    if cfg.repeats == 0 {
        return Err(McspError::InvalidParam {
            name: "repeats",
            reason: "must be at least 1".into(),
        });
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(McspError::InvalidParam {
            name: "alpha",
            reason: "significance level must lie in (0, 1)".into(),
        });
    }
    for algo in algos {
        if let AlgorithmKind::Mmas(p) = &algo.kind {
            p.validate()?;
        }
    }
    let one = |(k, inst): (usize, &Instance)| bench_instance(k, inst, algos, cfg);
    #[cfg(feature = "parallel")]
    let parts: Vec<BenchResult> = if cfg.parallel {
        instances.par_iter().enumerate().map(one).collect()
    } else {
        instances.iter().enumerate().map(one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<BenchResult> = instances.iter().enumerate().map(one).collect();

    let mut result = BenchResult::default();
    for part in parts {
        result.records.extend(part.records);
        result.failures.extend(part.failures);
    }
    Ok(result)
}
