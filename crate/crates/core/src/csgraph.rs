//! Common substring graph.
//!
//! Vertices are the positions of `X`; an edge block `[0, i, j]` exists iff
//! `X[i..=j]` occurs somewhere in `Y`, and its match list is every block of
//! `Y` spelling the same substring. Everything is answered from one
//! longest-common-extension table, so match lists are never materialized.
//!
//! Construction state lives in [`Occupancy`]: a match is "deleted" exactly
//! when it overlaps an occupied position of `Y`, so many ants can share one
//! immutable graph.

use crate::blocks::{related, Block, StringId};
use crate::error::{McspError, Result};

/// `lce(i, p)` = length of the longest common prefix of `a[i..]` and `b[p..]`.
#[derive(Debug, Clone)]
pub struct LceTable {
    rows: usize,
    cols: usize,
    table: Vec<u32>,
}

impl LceTable {
    pub fn new(a: &[u8], b: &[u8]) -> Self {
        let (rows, cols) = (a.len(), b.len());
        let stride = cols + 1;
        let mut full = vec![0u32; (rows + 1) * stride];
        for i in (0..rows).rev() {
            for p in (0..cols).rev() {
                if a[i] == b[p] {
                    full[i * stride + p] = full[(i + 1) * stride + p + 1] + 1;
                }
            }
        }
        let mut table = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            table.extend_from_slice(&full[i * stride..i * stride + cols]);
        }
        LceTable { rows, cols, table }
    }

    #[inline]
    pub fn get(&self, i: usize, p: usize) -> usize {
        self.table[i * self.cols + p] as usize
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.table[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Dense index of an edge block within a graph.
pub type EdgeId = usize;

#[derive(Debug, Clone)]
pub struct CommonSubstringGraph {
    x: Vec<u8>,
    y: Vec<u8>,
    lce: LceTable,
    /// Longest edge leaving each vertex.
    out_degree: Vec<usize>,
    /// `edge_offset[i] + len - 1` is the id of `[0, i, i + len - 1]`.
    edge_offset: Vec<usize>,
    edges: Vec<Block>,
    /// Longest prefix of `Y[p..]` that occurs in `X`.
    y_reach: Vec<usize>,
    max_edge_len: usize,
}

impl CommonSubstringGraph {
    pub fn build(x: &[u8], y: &[u8]) -> Result<Self> {
        if x.is_empty() || y.is_empty() {
            return Err(McspError::Empty);
        }
        if !related(x, y) {
            return Err(McspError::Unrelated);
        }
        let n = x.len();
        let lce = LceTable::new(x, y);

        let out_degree: Vec<usize> = (0..n)
            .map(|i| lce.row(i).iter().copied().max().unwrap_or(0) as usize)
            .collect();
        let mut y_reach = vec![0usize; n];
        for i in 0..n {
            for (reach, &l) in y_reach.iter_mut().zip(lce.row(i)) {
                *reach = (*reach).max(l as usize);
            }
        }

        let mut edge_offset = Vec::with_capacity(n);
        let mut edges = Vec::new();
        for (i, &deg) in out_degree.iter().enumerate() {
            edge_offset.push(edges.len());
            edges.extend((1..=deg).map(|len| Block::with_len(StringId::X, i, len)));
        }
        let max_edge_len = out_degree.iter().copied().max().unwrap_or(0);

        Ok(CommonSubstringGraph {
            x: x.to_vec(),
            y: y.to_vec(),
            lce,
            out_degree,
            edge_offset,
            edges,
            y_reach,
            max_edge_len,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn y(&self) -> &[u8] {
        &self.y
    }

    pub fn lce(&self) -> &LceTable {
        &self.lce
    }

    pub fn edges(&self) -> &[Block] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn max_edge_len(&self) -> usize {
        self.max_edge_len
    }

    /// Length of the longest edge block starting at `v`.
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_degree[v]
    }

    pub fn edge_id(&self, block: &Block) -> Option<EdgeId> {
        if block.id != StringId::X || block.start >= self.len() {
            return None;
        }
        (block.len() <= self.out_degree[block.start])
            .then(|| self.edge_offset[block.start] + block.len() - 1)
    }

    #[inline]
    pub(crate) fn edge_id_unchecked(&self, start: usize, len: usize) -> EdgeId {
        self.edge_offset[start] + len - 1
    }

    pub fn edge(&self, id: EdgeId) -> Block {
        self.edges[id]
    }

    pub fn is_edge(&self, block: &Block) -> bool {
        self.edge_id(block).is_some()
    }

    /// Every block of `Y` spelling the same substring as `block`.
    pub fn match_list(&self, block: &Block) -> Vec<Block> {
        let len = block.len();
        self.lce
            .row(block.start)
            .iter()
            .enumerate()
            .filter(|(_, &l)| l as usize >= len)
            .map(|(p, _)| Block::with_len(StringId::Y, p, len))
            .collect()
    }

    /// Matches of `block` that touch no occupied position.
    pub fn free_matches(&self, occ: &Occupancy, block: &Block) -> Vec<Block> {
        let len = block.len();
        self.lce
            .row(block.start)
            .iter()
            .enumerate()
            .filter(|&(p, &l)| l as usize >= len && occ.free_run(p) >= len)
            .map(|(p, _)| Block::with_len(StringId::Y, p, len))
            .collect()
    }

    /// Longest free block of `Y` containing `m` whose substring occurs in `X`.
    pub fn free_span(&self, occ: &Occupancy, m: &Block) -> usize {
        debug_assert!(
            occ.free_run(m.start) >= m.len(),
            "free_span of occupied block {m}"
        );
        let (p, q) = (m.start, m.end);
        let run_at_p = occ.free_run(p);
        let mut best = m.len();
        // Starts further left than `q + 1 - max_edge_len` cannot reach `q`.
        let lowest = (q + 1).saturating_sub(self.max_edge_len);
        let mut s = p;
        loop {
            let free_from_s = (p - s) + run_at_p;
            let reach = self.y_reach[s].min(free_from_s);
            if s + reach > q {
                best = best.max(reach);
            }
            if s == lowest || s == 0 || occ.is_occupied(s - 1) {
                break;
            }
            s -= 1;
        }
        best
    }

    /// Minimum free span over the free matches of `block`.
    pub fn min_span(&self, occ: &Occupancy, block: &Block) -> Result<usize> {
        self.free_matches(occ, block)
            .iter()
            .map(|m| self.free_span(occ, m))
            .min()
            .ok_or(McspError::NoFreeMatch(*block))
    }

    /// Edge blocks leaving `v` that have a free match and do not run past
    /// the vertex just before `v_start` on the cyclic walk.
    pub fn available_edges(&self, occ: &Occupancy, v: usize, v_start: usize) -> Vec<Block> {
        let longest = self.longest_available(occ, v, v_start);
        (1..=longest)
            .map(|len| Block::with_len(StringId::X, v, len))
            .collect()
    }

    /// Length of the longest available edge from `v`; every shorter edge
    /// from `v` is available too.
    pub(crate) fn longest_available(&self, occ: &Occupancy, v: usize, v_start: usize) -> usize {
        let limit = wrap_limit(self.len(), v, v_start).min(self.out_degree[v]);
        let mut longest = 0;
        for (p, &l) in self.lce.row(v).iter().enumerate() {
            let fit = (l as usize).min(occ.free_run(p));
            if fit > longest {
                longest = fit;
                if longest >= limit {
                    break;
                }
            }
        }
        longest.min(limit)
    }

    /// Minimum free span of every available edge from `v`, indexed by
    /// `len - 1`, in a single pass over the match positions.
    pub(crate) fn min_spans_from(&self, occ: &Occupancy, v: usize, longest: usize) -> Vec<usize> {
        let mut spans = vec![usize::MAX; longest];
        for (p, &l) in self.lce.row(v).iter().enumerate() {
            let fit = (l as usize).min(occ.free_run(p)).min(longest);
            for len in 1..=fit {
                let span = self.free_span(occ, &Block::with_len(StringId::Y, p, len));
                if span < spans[len - 1] {
                    spans[len - 1] = span;
                }
            }
        }
        spans
    }
}

/// Maximum edge length from `v` that keeps the walk from crossing the
/// position just before `v_start`.
pub fn wrap_limit(n: usize, v: usize, v_start: usize) -> usize {
    if v >= v_start {
        n - v
    } else {
        v_start - v
    }
}

/// Which positions of `Y` are taken by the blocks chosen so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupancy {
    /// Number of consecutive free positions starting at each index; zero
    /// marks an occupied position.
    free_run: Vec<usize>,
    consumed: usize,
}

impl Occupancy {
    pub fn new(n: usize) -> Self {
        Occupancy {
            free_run: (0..n).map(|p| n - p).collect(),
            consumed: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.free_run.len()
    }

    pub fn is_empty(&self) -> bool {
        self.free_run.is_empty()
    }

    #[inline]
    pub fn is_occupied(&self, p: usize) -> bool {
        self.free_run[p] == 0
    }

    #[inline]
    pub fn free_run(&self, p: usize) -> usize {
        self.free_run[p]
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn is_full(&self) -> bool {
        self.consumed == self.free_run.len()
    }

    pub fn is_free(&self, block: &Block) -> bool {
        block.end < self.len() && self.free_run[block.start] >= block.len()
    }

    pub fn occupy(&mut self, block: &Block) -> Result<()> {
        if block.end >= self.len() {
            return Err(McspError::InvalidParam {
                name: "block",
                reason: format!("{block} lies outside a string of length {}", self.len()),
            });
        }
        if let Some(p) = (block.start..=block.end).find(|&p| self.is_occupied(p)) {
            return Err(McspError::AlreadyOccupied(p));
        }
        for p in block.start..=block.end {
            self.free_run[p] = 0;
        }
        let mut k = block.start;
        while k > 0 && self.free_run[k - 1] > 0 {
            k -= 1;
            self.free_run[k] = block.start - k;
        }
        self.consumed += block.len();
        Ok(())
    }
}
