//! Greedy baseline: keep extracting a longest common substring of the
//! still-unmarked parts of both strings.

use crate::blocks::{related, Block, CommonPartition};
use crate::csgraph::LceTable;
use crate::error::{McspError, Result};

/// One extraction step: the pair of blocks marked together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extraction {
    pub from_x: Block,
    pub to_y: Block,
}

/// Runs the greedy baseline; blocks are reported in `X` order.
pub fn greedy_mcsp(x: &[u8], y: &[u8]) -> Result<CommonPartition> {
    let steps = greedy_trace(x, y)?;
    let mut cp = CommonPartition::new();
    for s in steps {
        cp.push(s.from_x, s.to_y);
    }
    Ok(cp.sorted_by_x())
}

/// The sequence of extractions in the order they were made. Ties go to
/// the smallest start in `X`, then the smallest start in `Y`.
pub fn greedy_trace(x: &[u8], y: &[u8]) -> Result<Vec<Extraction>> {
    if x.is_empty() {
        return Err(McspError::Empty);
    }
    if !related(x, y) {
        return Err(McspError::Unrelated);
    }
    let n = x.len();
    let lce = LceTable::new(x, y);
    let mut marked_x = vec![false; n];
    let mut marked_y = vec![false; n];
    let mut left = n;
    let mut steps = Vec::new();

    while left > 0 {
        let run_x = free_runs(&marked_x);
        let run_y = free_runs(&marked_y);
        let mut best = (0usize, 0usize, 0usize);
        for (i, &free_x) in run_x.iter().enumerate() {
            if free_x <= best.0 {
                continue;
            }
            for (p, (&common, &free_y)) in lce.row(i).iter().zip(&run_y).enumerate() {
                let len = (common as usize).min(free_x).min(free_y);
                if len > best.0 {
                    best = (len, i, p);
                }
            }
        }
        let (len, i, p) = best;
        debug_assert!(len > 0, "related strings always share a character");
        marked_x[i..i + len].fill(true);
        marked_y[p..p + len].fill(true);
        left -= len;
        steps.push(Extraction {
            from_x: Block::x(i, i + len - 1),
            to_y: Block::y(p, p + len - 1),
        });
    }
    Ok(steps)
}

fn free_runs(marked: &[bool]) -> Vec<usize> {
    let mut run = vec![0; marked.len()];
    let mut next = 0;
    for k in (0..marked.len()).rev() {
        next = if marked[k] { 0 } else { next + 1 };
        run[k] = next;
    }
    run
}
