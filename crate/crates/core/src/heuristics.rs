//! Static, dynamic and combined desirability of edge blocks.

use crate::blocks::Block;
use crate::csgraph::{CommonSubstringGraph, Occupancy};
use crate::error::{McspError, Result};

/// Coefficients of the static and dynamic terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicWeights {
    pub a: f64,
    pub b: f64,
}

impl Default for HeuristicWeights {
    fn default() -> Self {
        HeuristicWeights { a: 1.0, b: 1.0 }
    }
}

impl HeuristicWeights {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let w = HeuristicWeights { a, b };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.a.is_finite() && self.b.is_finite() && self.a >= 0.0 && self.b >= 0.0;
        if !ok || self.a + self.b <= 0.0 {
            return Err(McspError::InvalidParam {
                name: "heuristic",
                reason: format!(
                    "need a, b >= 0 and a + b > 0, got a={} b={}",
                    self.a, self.b
                ),
            });
        }
        Ok(())
    }
}

/// Block length over the longest edge length.
pub fn static_heuristic(g: &CommonSubstringGraph, block: &Block) -> f64 {
    block.len() as f64 / g.max_edge_len() as f64
}

/// `1 / (|len - min_span| + 1)` from an already known minimum span.
#[inline]
pub fn dynamic_from_span(len: usize, min_span: usize) -> f64 {
    1.0 / (len.abs_diff(min_span) as f64 + 1.0)
}

pub fn dynamic_heuristic(g: &CommonSubstringGraph, occ: &Occupancy, block: &Block) -> Result<f64> {
    let span = g.min_span(occ, block)?;
    Ok(dynamic_from_span(block.len(), span))
}

pub fn combined_heuristic(
    g: &CommonSubstringGraph,
    occ: &Occupancy,
    block: &Block,
    weights: HeuristicWeights,
) -> Result<f64> {
    let eta_s = static_heuristic(g, block);
    let eta_d = dynamic_heuristic(g, occ, block)?;
    Ok(weights.a * eta_s + weights.b * eta_d)
}

/// Combined value from precomputed parts; used on the construction hot path.
#[inline]
pub(crate) fn combine(len: usize, min_span: usize, max_len: usize, w: HeuristicWeights) -> f64 {
    w.a * (len as f64 / max_len as f64) + w.b * dynamic_from_span(len, min_span)
}
