//! Block algebra over the two input strings.
//!
//! A [`Block`] is an inclusive interval `[id, start, end]` into either the
//! source string `X` or the target string `Y`. Every solver in the crate
//! speaks in blocks: the partition of `X` and its image in `Y` are both
//! plain block lists, and validity of a common partition reduces to the
//! interval checks in this module.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{McspError, Result};

/// Which of the two input strings a block indexes into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StringId {
    X = 0,
    Y = 1,
}

impl StringId {
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Inclusive interval `[id, start, end]`, `start <= end`.
///
/// The empty block is not a `Block`; operations that can produce it return
/// `Option<Block>` with `None` as the empty value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub id: StringId,
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn new(id: StringId, start: usize, end: usize) -> Self {
        assert!(start <= end, "block start {start} past end {end}");
        Block { id, start, end }
    }

    pub fn x(start: usize, end: usize) -> Self {
        Block::new(StringId::X, start, end)
    }

    pub fn y(start: usize, end: usize) -> Self {
        Block::new(StringId::Y, start, end)
    }

    /// Block of `len` characters starting at `start`.
    pub fn with_len(id: StringId, start: usize, len: usize) -> Self {
        assert!(len >= 1, "blocks have positive length");
        Block::new(id, start, start + len - 1)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(&self, other: &Block) -> bool {
        self.id == other.id && self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Block) -> bool {
        self.id == other.id && self.start <= other.end && other.start <= self.end
    }

    /// The characters this block covers in `s`.
    pub fn slice<'a>(&self, s: &'a [u8]) -> &'a [u8] {
        &s[self.start..=self.end]
    }

    fn check_same_id(&self, other: &Block) -> Result<()> {
        if self.id != other.id {
            return Err(McspError::IdMismatch(*self, *other));
        }
        Ok(())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.id.index(), self.start, self.end)
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.id, self.start, self.end).cmp(&(other.id, other.start, other.end))
    }
}

/// True iff `x` and `y` are permutations of one another.
pub fn related(x: &[u8], y: &[u8]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut counts = [0i64; 256];
    for &c in x {
        counts[c as usize] += 1;
    }
    for &c in y {
        counts[c as usize] -= 1;
    }
    counts.iter().all(|&c| c == 0)
}

/// Common sub-interval of two blocks, `None` when they are disjoint.
pub fn intersect(a: &Block, b: &Block) -> Result<Option<Block>> {
    a.check_same_id(b)?;
    if b.start > a.end || a.start > b.end {
        return Ok(None);
    }
    Ok(Some(Block::new(
        a.id,
        a.start.max(b.start),
        a.end.min(b.end),
    )))
}

/// Outcome of a two-block union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Union {
    Merged(Block),
    /// Blocks separated by a gap, ordered by start.
    Disjoint(Block, Block),
}

/// Union of two blocks: merged when they overlap or touch.
pub fn union(a: &Block, b: &Block) -> Result<Union> {
    a.check_same_id(b)?;
    let (lo, hi) = if a.start <= b.start { (a, b) } else { (b, a) };
    if hi.start <= lo.end + 1 {
        Ok(Union::Merged(Block::new(
            lo.id,
            lo.start,
            lo.end.max(hi.end),
        )))
    } else {
        Ok(Union::Disjoint(*lo, *hi))
    }
}

/// Sorted list of pairwise disjoint blocks over one string.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockList(Vec<Block>);

impl BlockList {
    pub fn new() -> Self {
        BlockList(Vec::new())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The lone member when the list has collapsed into one block.
    pub fn as_single(&self) -> Option<Block> {
        match self.0.as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// Inserts `block` at its ordered position and merges it with any
    /// neighbour it touches.
    pub fn insert(&mut self, block: Block) -> Result<()> {
        if let Some(first) = self.0.first() {
            first.check_same_id(&block)?;
        }
        let pos = self.0.partition_point(|b| b.start < block.start);
        for neighbour in [pos.checked_sub(1), Some(pos)].into_iter().flatten() {
            if let Some(existing) = self.0.get(neighbour) {
                if existing.overlaps(&block) {
                    return Err(McspError::Overlap {
                        existing: *existing,
                        new: block,
                    });
                }
            }
        }
        self.0.insert(pos, block);

        // merge with right neighbour, then left
        if pos + 1 < self.0.len() {
            if let Union::Merged(m) = union(&self.0[pos], &self.0[pos + 1])? {
                self.0[pos] = m;
                self.0.remove(pos + 1);
            }
        }
        if pos > 0 {
            if let Union::Merged(m) = union(&self.0[pos - 1], &self.0[pos])? {
                self.0[pos - 1] = m;
                self.0.remove(pos);
            }
        }
        Ok(())
    }
}

/// Functional form of [`BlockList::insert`].
pub fn union_into_list(list: &BlockList, block: Block) -> Result<BlockList> {
    let mut out = list.clone();
    out.insert(block)?;
    Ok(out)
}

/// Length of the longest member of `list` that contains `block`.
pub fn span_in_list(block: &Block, list: &[Block]) -> Result<usize> {
    let mut best = None;
    for candidate in list {
        candidate.check_same_id(block)?;
        if candidate.contains(block) {
            best = best.max(Some(candidate.len()));
        }
    }
    best.ok_or(McspError::NotContained(*block))
}

/// A partition of `X` paired position-wise with blocks of `Y`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommonPartition {
    pub partition: Vec<Block>,
    pub mapped: Vec<Block>,
}

impl CommonPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, from_x: Block, to_y: Block) {
        self.partition.push(from_x);
        self.mapped.push(to_y);
    }

    /// Number of blocks.
    pub fn cost(&self) -> usize {
        self.partition.len()
    }

    /// Pairs ordered by their position in `X`.
    pub fn sorted_by_x(&self) -> CommonPartition {
        let mut pairs: Vec<_> = self
            .partition
            .iter()
            .copied()
            .zip(self.mapped.iter().copied())
            .collect();
        pairs.sort_by_key(|(b, _)| b.start);
        let (partition, mapped) = pairs.into_iter().unzip();
        CommonPartition { partition, mapped }
    }

    /// The substrings of `X` making up the partition, in list order.
    pub fn substrings<'a>(&self, x: &'a [u8]) -> Vec<&'a [u8]> {
        self.partition.iter().map(|b| b.slice(x)).collect()
    }
}

/// Why a candidate common partition was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    Overlap,
    Gap,
    SubstringMismatch,
    LengthMismatch,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidReason::Overlap => "overlap",
            InvalidReason::Gap => "gap",
            InvalidReason::SubstringMismatch => "substring-mismatch",
            InvalidReason::LengthMismatch => "length-mismatch",
        })
    }
}

/// Checks that `blocks` are pairwise disjoint and cover `[id, 0, n-1]`.
pub fn check_partition(blocks: &[Block], id: StringId, n: usize) -> Result<(), InvalidReason> {
    if blocks.iter().any(|b| b.id != id || b.end >= n) {
        return Err(InvalidReason::LengthMismatch);
    }
    let mut sorted = blocks.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[1].start <= w[0].end) {
        return Err(InvalidReason::Overlap);
    }
    let covered: usize = sorted.iter().map(Block::len).sum();
    if covered != n {
        return Err(InvalidReason::Gap);
    }
    Ok(())
}

/// Full validity check of a common partition of `x` and `y`.
pub fn validate_common_partition(
    cp: &CommonPartition,
    x: &[u8],
    y: &[u8],
) -> Result<(), InvalidReason> {
    if cp.partition.len() != cp.mapped.len() || x.len() != y.len() {
        return Err(InvalidReason::LengthMismatch);
    }
    check_partition(&cp.partition, StringId::X, x.len())?;
    check_partition(&cp.mapped, StringId::Y, y.len())?;
    for (bx, by) in cp.partition.iter().zip(&cp.mapped) {
        if bx.slice(x) != by.slice(y) {
            return Err(InvalidReason::SubstringMismatch);
        }
    }
    Ok(())
}
