//! Benchmark records and their CSV files.
//!
//! A benchmark writes a summary table (one row per instance and
//! algorithm), the raw per-run rows it was computed from, and optionally a
//! plot-ready series comparing two algorithms instance by instance.

use std::collections::HashMap;
use std::io::{Read, Write};

use super::stats::{mean, sample_stddev, t_test, Significance};
use crate::error::{McspError, Result};

/// One repetition of one algorithm on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub cost: usize,
    pub time_to_best_secs: f64,
    /// Colony iterations of the run; zero for the deterministic solvers.
    pub iterations: u64,
}

/// Aggregated results of one algorithm on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub instance: String,
    pub length: usize,
    pub algorithm: String,
    pub runs: Vec<RunResult>,
    pub mean: f64,
    pub best: usize,
    pub worst: usize,
    pub stddev: f64,
    /// Greedy cost on the same instance.
    pub baseline: usize,
    /// `mean - baseline`.
    pub difference: f64,
    pub mean_time: f64,
    /// Absent when fewer than two runs were made.
    pub t: Option<f64>,
    pub p: Option<f64>,
    pub significance: Significance,
}

impl TrialRecord {
    /// Aggregates `runs` and tests them against `baseline` at level `alpha`.
    pub fn from_runs(
        instance: &str,
        length: usize,
        algorithm: &str,
        runs: Vec<RunResult>,
        baseline: usize,
        alpha: f64,
    ) -> Result<Self> {
        if runs.is_empty() {
            return Err(McspError::EmptyInput("trial runs"));
        }
        let costs: Vec<f64> = runs.iter().map(|r| r.cost as f64).collect();
        let times: Vec<f64> = runs.iter().map(|r| r.time_to_best_secs).collect();
        let m = mean(&costs);
        let (t, p, significance) = if runs.len() >= 2 {
            let test = t_test(baseline as f64, &costs, alpha)?;
            (Some(test.t), Some(test.p), test.significance)
        } else {
            (None, None, Significance::Similar)
        };
        Ok(TrialRecord {
            instance: instance.to_string(),
            length,
            algorithm: algorithm.to_string(),
            best: runs.iter().map(|r| r.cost).min().unwrap(),
            worst: runs.iter().map(|r| r.cost).max().unwrap(),
            mean: m,
            stddev: sample_stddev(&costs),
            baseline,
            difference: m - baseline as f64,
            mean_time: mean(&times),
            t,
            p,
            significance,
            runs,
        })
    }
}

const SUMMARY_HEADER: [&str; 14] = [
    "instance",
    "length",
    "algorithm",
    "runs",
    "greedy",
    "mean",
    "worst",
    "best",
    "difference",
    "stddev",
    "time",
    "t",
    "p",
    "significance",
];

const RUNS_HEADER: [&str; 7] = [
    "instance",
    "length",
    "algorithm",
    "repeat",
    "cost",
    "time_to_best_secs",
    "iterations",
];

fn fixed4(v: f64) -> String {
    format!("{v:.4}")
}

/// Four decimals, switching to scientific notation below `1e-4`.
pub fn format_p(p: f64) -> String {
    if p < 1e-4 {
        format!("{p:.4e}")
    } else {
        format!("{p:.4}")
    }
}

pub fn write_summary<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.length.to_string(),
            r.algorithm.clone(),
            r.runs.len().to_string(),
            r.baseline.to_string(),
            fixed4(r.mean),
            r.worst.to_string(),
            r.best.to_string(),
            fixed4(r.difference),
            fixed4(r.stddev),
            fixed4(r.mean_time),
            r.t.map(fixed4).unwrap_or_default(),
            r.p.map(format_p).unwrap_or_default(),
            r.significance.symbol().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-run rows; times keep full precision so the records can be rebuilt.
pub fn write_runs<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUNS_HEADER)?;
    for r in records {
        for (k, run) in r.runs.iter().enumerate() {
            w.write_record([
                r.instance.clone(),
                r.length.to_string(),
                r.algorithm.clone(),
                k.to_string(),
                run.cost.to_string(),
                run.time_to_best_secs.to_string(),
                run.iterations.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn field(row: &csv::StringRecord, k: usize, line: usize) -> Result<&str> {
    row.get(k).ok_or_else(|| McspError::Parse {
        path: "<csv>".into(),
        line,
        msg: format!("missing column {k}"),
    })
}

fn number<T: std::str::FromStr>(row: &csv::StringRecord, k: usize, line: usize) -> Result<T> {
    let s = field(row, k, line)?;
    s.parse().map_err(|_| McspError::Parse {
        path: "<csv>".into(),
        line,
        msg: format!("bad number {s:?}"),
    })
}

/// Rebuilds records from a summary file and its per-run file. Statistics
/// are recomputed from the runs; the baseline and significance marks come
/// from the summary.
pub fn read_records<R1: Read, R2: Read>(summary: R1, runs: R2) -> Result<Vec<TrialRecord>> {
    let mut by_key: HashMap<(String, String), Vec<RunResult>> = HashMap::new();
    let mut rdr = csv::Reader::from_reader(runs);
    for (k, row) in rdr.records().enumerate() {
        let row = row?;
        let line = k + 2;
        let key = (
            field(&row, 0, line)?.to_string(),
            field(&row, 2, line)?.to_string(),
        );
        by_key.entry(key).or_default().push(RunResult {
            cost: number(&row, 4, line)?,
            time_to_best_secs: number(&row, 5, line)?,
            iterations: number(&row, 6, line)?,
        });
    }

    let mut records = Vec::new();
    let mut rdr = csv::Reader::from_reader(summary);
    for (k, row) in rdr.records().enumerate() {
        let row = row?;
        let line = k + 2;
        let instance = field(&row, 0, line)?;
        let algorithm = field(&row, 2, line)?;
        let runs = by_key
            .remove(&(instance.to_string(), algorithm.to_string()))
            .ok_or_else(|| McspError::Parse {
                path: "<csv>".into(),
                line,
                msg: format!("no runs for {instance}/{algorithm}"),
            })?;
        let mark = field(&row, 13, line)?;
        let significance = Significance::from_symbol(mark).ok_or_else(|| McspError::Parse {
            path: "<csv>".into(),
            line,
            msg: format!("bad significance mark {mark:?}"),
        })?;
        let mut record = TrialRecord::from_runs(
            instance,
            number(&row, 1, line)?,
            algorithm,
            runs,
            number(&row, 4, line)?,
            0.05,
        )?;
        record.significance = significance;
        records.push(record);
    }
    Ok(records)
}

/// Plot-ready comparison of two algorithms: one row per instance holding
/// both mean costs, in instance order of appearance.
pub fn write_series<W: Write>(
    records: &[TrialRecord],
    first: &str,
    second: &str,
    out: W,
) -> Result<usize> {
    let mut order: Vec<&str> = Vec::new();
    let mut means: HashMap<(&str, &str), &TrialRecord> = HashMap::new();
    for r in records {
        if !order.contains(&r.instance.as_str()) {
            order.push(&r.instance);
        }
        means.insert((&r.instance, &r.algorithm), r);
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "instance", "length", first, second])?;
    let mut rows = 0;
    for inst in order {
        let (Some(a), Some(b)) = (means.get(&(inst, first)), means.get(&(inst, second))) else {
            continue;
        };
        rows += 1;
        w.write_record([
            rows.to_string(),
            inst.to_string(),
            a.length.to_string(),
            fixed4(a.mean),
            fixed4(b.mean),
        ])?;
    }
    w.flush()?;
    Ok(rows)
}
