//! Parameter tuning: a full grid of colony settings ranked across instances.

use std::fmt;
use std::time::Duration;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::dataset::Instance;
use crate::error::{McspError, Result};
use crate::mmas::{solve, MmasParams};
use crate::seeding::derive_seed;

/// Normalized rank of every column of `costs` (rows are instances,
/// columns are parameter settings): `R_j = sum_i A[i][j] / max(A[i])`.
/// Returns `(column, R_j)` sorted ascending; ties keep column order.
pub fn tuning_rank(costs: &[Vec<f64>]) -> Result<Vec<(usize, f64)>> {
    let cols = costs.first().map_or(0, Vec::len);
    if costs.is_empty() || cols == 0 {
        return Err(McspError::EmptyInput("tuning matrix"));
    }
    if costs.iter().any(|row| row.len() != cols) {
        return Err(McspError::InvalidParam {
            name: "costs",
            reason: "every instance needs one cost per setting".into(),
        });
    }
    if costs.iter().flatten().any(|&a| !(a.is_finite() && a > 0.0)) {
        return Err(McspError::InvalidParam {
            name: "costs",
            reason: "tuning costs must be positive".into(),
        });
    }
    let mut rank = vec![0.0; cols];
    for row in costs {
        let max = row.iter().copied().fold(f64::MIN, f64::max);
        for (r, a) in rank.iter_mut().zip(row) {
            *r += a / max;
        }
    }
    let mut ranked: Vec<(usize, f64)> = rank.into_iter().enumerate().collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(ranked)
}

/// One combination of the tuned parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub n_ants: usize,
    pub p_best: f64,
}

impl GridPoint {
    pub fn apply(&self, base: &MmasParams) -> MmasParams {
        MmasParams {
            alpha: self.alpha,
            beta: self.beta,
            epsilon: self.epsilon,
            n_ants: self.n_ants,
            p_best: self.p_best,
            ..base.clone()
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} beta={} epsilon={} n_ants={} p_best={}",
            self.alpha, self.beta, self.epsilon, self.n_ants, self.p_best
        )
    }
}

/// Value sets whose Cartesian product is searched.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub n_ants: Vec<usize>,
    pub p_best: Vec<f64>,
}

impl ParamGrid {
    /// The standard tuning grid: three values for each of five
    /// parameters, 243 settings in all.
    pub fn standard() -> Self {
        ParamGrid {
            alpha: vec![1.0, 2.0, 3.0],
            beta: vec![3.0, 5.0, 10.0],
            epsilon: vec![0.02, 0.04, 0.05],
            n_ants: vec![20, 60, 100],
            p_best: vec![0.005, 0.05, 0.5],
        }
    }

    /// Settings in lexicographic order, `p_best` varying fastest.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &alpha in &self.alpha {
            for &beta in &self.beta {
                for &epsilon in &self.epsilon {
                    for &n_ants in &self.n_ants {
                        for &p_best in &self.p_best {
                            out.push(GridPoint {
                                alpha,
                                beta,
                                epsilon,
                                n_ants,
                                p_best,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub point: GridPoint,
    pub score: f64,
}

/// Settings sorted by rank; the first entry is the winner.
#[derive(Debug, Clone, PartialEq)]
pub struct TuningRank {
    pub entries: Vec<RankEntry>,
    /// Mean best cost per instance (rows) and setting (grid order).
    pub costs: Vec<Vec<f64>>,
}

impl TuningRank {
    pub fn winner(&self) -> &RankEntry {
        &self.entries[0]
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "rank", "alpha", "beta", "epsilon", "n_ants", "p_best", "score",
        ])?;
        for (k, e) in self.entries.iter().enumerate() {
            let p = e.point;
            w.write_record([
                (k + 1).to_string(),
                p.alpha.to_string(),
                p.beta.to_string(),
                p.epsilon.to_string(),
                p.n_ants.to_string(),
                p.p_best.to_string(),
                format!("{:.4}", e.score),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Solves every instance under every grid setting `repeats` times and
/// ranks the settings by their mean best cost.
pub fn run_tuning(
    instances: &[Instance],
    grid: &ParamGrid,
    base: &MmasParams,
    repeats: usize,
) -> Result<TuningRank> {
    if instances.is_empty() {
        return Err(McspError::EmptyInput("tuning instances"));
    }
    if repeats == 0 {
        return Err(McspError::InvalidParam {
            name: "repeats",
            reason: "must be at least 1".into(),
        });
    }
    let points = grid.points();
    if points.is_empty() {
        return Err(McspError::EmptyInput("parameter grid"));
    }
    for p in &points {
        p.apply(base).validate()?;
    }

    let cell = |i: usize, j: usize| -> Result<f64> {
        let inst = &instances[i];
        let mut total = 0.0;
        for r in 0..repeats {
            let params = MmasParams {
                seed: derive_seed(base.seed, &[i as u64, j as u64, r as u64]),
                // one level of parallelism is enough here
                parallel: false,
                ..points[j].apply(base)
            };
            total += solve(&inst.x, &inst.y, &params)?.best.cost() as f64;
        }
        Ok(total / repeats as f64)
    };
    let cells: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..points.len()).map(move |j| (i, j)))
        .collect();
    #[cfg(feature = "parallel")]
    let flat: Result<Vec<f64>> = if base.parallel {
        cells.par_iter().map(|&(i, j)| cell(i, j)).collect()
    } else {
        cells.iter().map(|&(i, j)| cell(i, j)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let flat: Result<Vec<f64>> = cells.iter().map(|&(i, j)| cell(i, j)).collect();
    let costs: Vec<Vec<f64>> = flat?.chunks(points.len()).map(<[f64]>::to_vec).collect();

    let entries = tuning_rank(&costs)?
        .into_iter()
        .map(|(j, score)| RankEntry {
            point: points[j],
            score,
        })
        .collect();
    Ok(TuningRank { entries, costs })
}

/// Short budget used when only the ranking matters.
pub fn quick_budget(base: &MmasParams, iterations: u64) -> MmasParams {
    MmasParams {
        max_iterations: Some(iterations),
        max_time: base.max_time.min(Duration::from_secs(60)),
        ..base.clone()
    }
}
