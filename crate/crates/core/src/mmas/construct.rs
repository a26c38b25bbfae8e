//! Solution construction by a single ant.

use rand::Rng;

use crate::blocks::{Block, CommonPartition, StringId};
use crate::csgraph::{CommonSubstringGraph, EdgeId, Occupancy};
use crate::error::{McspError, Result};
use crate::heuristics::combine;

use super::{MmasParams, PheromoneTable};

/// A complete common partition together with the edge ids it used.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub partition: CommonPartition,
    pub edges: Vec<EdgeId>,
}

impl Solution {
    /// Wraps a partition whose blocks of `X` are all edges of `g`.
    pub fn from_partition(g: &CommonSubstringGraph, partition: CommonPartition) -> Self {
        let edges = partition
            .partition
            .iter()
            .map(|b| {
                g.edge_id(b)
                    .unwrap_or_else(|| panic!("{b} is not an edge block"))
            })
            .collect();
        Solution { partition, edges }
    }

    pub fn cost(&self) -> usize {
        self.partition.cost()
    }

    pub fn fitness(&self) -> f64 {
        1.0 / self.cost() as f64
    }
}

/// Evenly spread start vertex of ant `ant` out of `n_ants`: stride
/// `n / n_ants`, or 1 when there are more ants than vertices.
pub fn start_position(ant: usize, n: usize, n_ants: usize) -> usize {
    ((n / n_ants).max(1) * ant) % n
}

/// One candidate edge from the current vertex and its unnormalized weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeWeight {
    pub block: Block,
    pub edge: EdgeId,
    pub weight: f64,
}

/// `tau^alpha * eta^beta` for every available edge leaving `v`.
pub fn edge_weights(
    g: &CommonSubstringGraph,
    occ: &Occupancy,
    v: usize,
    v_start: usize,
    tau: &PheromoneTable,
    params: &MmasParams,
) -> Vec<EdgeWeight> {
    let longest = g.longest_available(occ, v, v_start);
    let spans = g.min_spans_from(occ, v, longest);
    let max_len = g.max_edge_len();
    spans
        .iter()
        .enumerate()
        .map(|(k, &span)| {
            let len = k + 1;
            let edge = g.edge_id_unchecked(v, len);
            let eta = combine(len, span, max_len, params.weights);
            EdgeWeight {
                block: Block::with_len(StringId::X, v, len),
                edge,
                weight: tau.get(edge).powf(params.alpha) * eta.powf(params.beta),
            }
        })
        .collect()
}

/// Transition probabilities over the available edges leaving `v`.
pub fn edge_probabilities(
    g: &CommonSubstringGraph,
    occ: &Occupancy,
    v: usize,
    v_start: usize,
    tau: &PheromoneTable,
    params: &MmasParams,
) -> Vec<(Block, f64)> {
    let weights = edge_weights(g, occ, v, v_start, tau, params);
    let total: f64 = weights.iter().map(|w| w.weight).sum();
    weights
        .iter()
        .map(|w| (w.block, w.weight / total))
        .collect()
}

/// Roulette-wheel draw; falls back to uniform when the weights vanish.
pub fn roulette<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    debug_assert!(!weights.is_empty());
    let total: f64 = weights.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return rng.random_range(0..weights.len());
    }
    let mut target = rng.random::<f64>() * total;
    for (k, &w) in weights.iter().enumerate() {
        if target < w {
            return k;
        }
        target -= w;
    }
    // rounding left a sliver past the last bucket
    weights
        .iter()
        .rposition(|&w| w > 0.0)
        .unwrap_or(weights.len() - 1)
}

/// Samples an edge leaving `v` by the pheromone/heuristic rule.
pub fn choose_edge<R: Rng + ?Sized>(
    g: &CommonSubstringGraph,
    occ: &Occupancy,
    v: usize,
    v_start: usize,
    tau: &PheromoneTable,
    params: &MmasParams,
    rng: &mut R,
) -> Result<Block> {
    pick_edge(g, occ, v, v_start, tau, params, rng).map(|w| w.block)
}

fn pick_edge<R: Rng + ?Sized>(
    g: &CommonSubstringGraph,
    occ: &Occupancy,
    v: usize,
    v_start: usize,
    tau: &PheromoneTable,
    params: &MmasParams,
    rng: &mut R,
) -> Result<EdgeWeight> {
    let candidates = edge_weights(g, occ, v, v_start, tau, params);
    if candidates.is_empty() {
        return Err(McspError::NoFreeMatch(Block::x(v, v)));
    }
    let weights: Vec<f64> = candidates.iter().map(|c| c.weight).collect();
    Ok(candidates[roulette(&weights, rng)])
}

/// Free match of `block` with the smallest free span, ties broken uniformly.
pub fn choose_match<R: Rng + ?Sized>(
    g: &CommonSubstringGraph,
    occ: &Occupancy,
    block: &Block,
    rng: &mut R,
) -> Result<Block> {
    let mut best_span = usize::MAX;
    let mut tied = Vec::new();
    for m in g.free_matches(occ, block) {
        let span = g.free_span(occ, &m);
        if span < best_span {
            best_span = span;
            tied.clear();
        }
        if span == best_span {
            tied.push(m);
        }
    }
    match tied.len() {
        0 => Err(McspError::NoFreeMatch(*block)),
        1 => Ok(tied[0]),
        k => Ok(tied[rng.random_range(0..k)]),
    }
}

/// Walks the graph cyclically from the ant's start vertex until every
/// position of `X` is covered.
pub fn construct_solution<R: Rng + ?Sized>(
    g: &CommonSubstringGraph,
    tau: &PheromoneTable,
    params: &MmasParams,
    ant: usize,
    rng: &mut R,
) -> Solution {
    let n = g.len();
    let v_start = if params.random_start {
        rng.random_range(0..n)
    } else {
        start_position(ant, n, params.n_ants)
    };

    let mut occ = Occupancy::new(n);
    let mut partition = CommonPartition::new();
    let mut edges = Vec::new();
    let mut v = v_start;
    loop {
        let step = pick_edge(g, &occ, v, v_start, tau, params, rng)
            .expect("a single-character edge is always available");
        let m = choose_match(g, &occ, &step.block, rng).expect("available edges have a free match");
        occ.occupy(&m).expect("chosen match is free");
        partition.push(step.block, m);
        edges.push(step.edge);
        v = (step.block.end + 1) % n;
        if v == v_start {
            break;
        }
    }
    debug_assert!(occ.is_full());
    Solution { partition, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::validate_common_partition;
    use crate::seeding::stream;

    #[test]
    fn start_positions() {
        assert_eq!(start_position(7, 100, 100), 7);
        assert_eq!(start_position(0, 100, 100), 0);
        assert_eq!(start_position(3, 10, 4), 6);
        // more ants than positions: stride 1, wrapping around
        assert_eq!(start_position(5, 4, 10), 1);
        assert_eq!(start_position(9, 7, 100), 2);
    }

    #[test]
    fn positioning_picks_smallest_span() {
        let g = CommonSubstringGraph::build(b"ababc", b"abcab").unwrap();
        let occ = Occupancy::new(5);
        let mut rng = stream(1, &[]);
        for _ in 0..20 {
            assert_eq!(
                choose_match(&g, &occ, &Block::x(0, 1), &mut rng).unwrap(),
                Block::y(3, 4)
            );
        }
    }

    #[test]
    fn unique_free_match_is_returned() {
        let g = CommonSubstringGraph::build(b"abad", b"adab").unwrap();
        let mut occ = Occupancy::new(4);
        occ.occupy(&Block::y(2, 3)).unwrap();
        let mut rng = stream(2, &[]);
        assert_eq!(
            choose_match(&g, &occ, &Block::x(0, 0), &mut rng).unwrap(),
            Block::y(0, 0)
        );
        assert!(choose_match(&g, &occ, &Block::x(0, 1), &mut rng).is_err());
    }

    #[test]
    fn tied_matches_are_fair() {
        // both 'a's of Y have free span 2 ("ab" and "ca")
        let g3 = CommonSubstringGraph::build(b"acab", b"abca").unwrap();
        let occ3 = Occupancy::new(4);
        let a0 = Block::y(0, 0);
        let a3 = Block::y(3, 3);
        assert_eq!(g3.free_span(&occ3, &a0), g3.free_span(&occ3, &a3));
        let mut rng = stream(3, &[]);
        let draws = 100_000;
        let hits = (0..draws)
            .filter(|_| choose_match(&g3, &occ3, &Block::x(0, 0), &mut rng).unwrap() == a0)
            .count();
        let freq = hits as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.02, "{freq}");
    }

    #[test]
    fn single_edge_is_certain() {
        let g = CommonSubstringGraph::build(b"ab", b"ba").unwrap();
        let occ = Occupancy::new(2);
        let tau = PheromoneTable::new(&g, 10.0);
        let params = MmasParams::default();
        let mut rng = stream(4, &[]);
        for _ in 0..100 {
            assert_eq!(
                choose_edge(&g, &occ, 0, 0, &tau, &params, &mut rng).unwrap(),
                Block::x(0, 0)
            );
        }
    }

    #[test]
    fn symmetric_edges_are_fair() {
        // two edges from 0 with equal tau; beta = 0 removes the heuristic
        let g = CommonSubstringGraph::build(b"abad", b"adab").unwrap();
        let occ = Occupancy::new(4);
        let tau = PheromoneTable::new(&g, 10.0);
        let params = MmasParams {
            beta: 0.0,
            ..Default::default()
        };
        let mut rng = stream(5, &[]);
        let draws = 100_000;
        let hits = (0..draws)
            .filter(|_| {
                choose_edge(&g, &occ, 0, 0, &tau, &params, &mut rng)
                    .unwrap()
                    .len()
                    == 1
            })
            .count();
        let freq = hits as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.02, "{freq}");
    }

    #[test]
    fn probabilities_sum_to_one() {
        let g = CommonSubstringGraph::build(b"bceabcdab", b"abcdbecab").unwrap();
        let tau = PheromoneTable::new(&g, 10.0);
        let params = MmasParams::default();
        let occ = Occupancy::new(g.len());
        for v in 0..g.len() {
            let probs = edge_probabilities(&g, &occ, v, 0, &tau, &params);
            let total: f64 = probs.iter().map(|p| p.1).sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn roulette_skips_zero_weights() {
        let mut rng = stream(6, &[]);
        for _ in 0..1000 {
            assert_eq!(roulette(&[0.0, 1.0, 0.0], &mut rng), 1);
        }
        let k = roulette(&[0.0, 0.0], &mut rng);
        assert!(k < 2);
    }

    #[test]
    fn constructions_are_valid() {
        let cases: [(&[u8], &[u8]); 4] = [
            (b"abcd", b"abcd"),
            (b"abad", b"adab"),
            (b"ababcab", b"abcabab"),
            (b"bceabcd", b"abcdbec"),
        ];
        let params = MmasParams {
            n_ants: 7,
            ..Default::default()
        };
        for (x, y) in cases {
            let g = CommonSubstringGraph::build(x, y).unwrap();
            let tau = PheromoneTable::new(&g, 10.0);
            for k in 0..1000u64 {
                let mut rng = stream(k, &[]);
                let ant = (k % 7) as usize;
                let sol = construct_solution(&g, &tau, &params, ant, &mut rng);
                assert_eq!(validate_common_partition(&sol.partition, x, y), Ok(()));
                assert!(sol.cost() >= 1 && sol.cost() <= x.len());
                assert_eq!(
                    sol.partition.partition[0].start,
                    start_position(ant, x.len(), 7)
                );
            }
        }
    }
}
