//! Exhaustive solver for tiny instances, used as ground truth.
//!
//! Blocks of `X` are laid left to right, so the set of occupied positions
//! of `Y` determines how much of `X` is already covered. The search is a
//! memoized recursion over that bitmask.

use crate::blocks::{related, Block, CommonPartition};
use crate::error::{McspError, Result};

/// Default length cap for [`exact_mcsp`].
pub const EXACT_LIMIT: usize = 14;

/// Hard ceiling on any requested limit; the memo has `2^limit` entries.
const MAX_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub cost: usize,
    pub witness: CommonPartition,
}

const UNKNOWN: u8 = u8::MAX;

struct Search<'a> {
    x: &'a [u8],
    y: &'a [u8],
    memo: Vec<u8>,
}

impl Search<'_> {
    fn full(&self) -> u32 {
        ((1u64 << self.x.len()) - 1) as u32
    }

    /// Candidate moves from `mask`, longest blocks first.
    fn moves(&self, mask: u32) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.x.len();
        let pos = mask.count_ones() as usize;
        (1..=n - pos).rev().flat_map(move |len| {
            (0..=n - len).filter_map(move |p| {
                let bits = (((1u64 << len) - 1) << p) as u32;
                (mask & bits == 0 && self.x[pos..pos + len] == self.y[p..p + len])
                    .then_some((len, p, bits))
            })
        })
    }

    fn best(&mut self, mask: u32) -> u8 {
        if mask == self.full() {
            return 0;
        }
        let cached = self.memo[mask as usize];
        if cached != UNKNOWN {
            return cached;
        }
        let mut best = UNKNOWN;
        let moves: Vec<_> = self.moves(mask).collect();
        for (_, _, bits) in moves {
            let rest = self.best(mask | bits);
            if rest != UNKNOWN && rest + 1 < best {
                best = rest + 1;
            }
            if best == 1 {
                break;
            }
        }
        self.memo[mask as usize] = best;
        best
    }
}

/// Minimum common partition by exhaustive search, refused above `limit`.
pub fn exact_mcsp(x: &[u8], y: &[u8], limit: usize) -> Result<ExactSolution> {
    if x.is_empty() {
        return Err(McspError::Empty);
    }
    if !related(x, y) {
        return Err(McspError::Unrelated);
    }
    let n = x.len();
    if n > limit.min(MAX_LIMIT) {
        return Err(McspError::TooLargeForExact {
            len: n,
            limit: limit.min(MAX_LIMIT),
        });
    }

    let mut search = Search {
        x,
        y,
        memo: vec![UNKNOWN; 1 << n],
    };
    let cost = search.best(0);
    debug_assert_ne!(cost, UNKNOWN);

    // replay the optimal choices
    let mut witness = CommonPartition::new();
    let mut mask = 0u32;
    while mask != search.full() {
        let pos = mask.count_ones() as usize;
        let target = search.best(mask) - 1;
        let moves: Vec<_> = search.moves(mask).collect();
        let (len, p, bits) = moves
            .into_iter()
            .find(|&(_, _, bits)| search.best(mask | bits) == target)
            .expect("memo holds an optimal move");
        witness.push(Block::x(pos, pos + len - 1), Block::y(p, p + len - 1));
        mask |= bits;
    }
    Ok(ExactSolution {
        cost: cost as usize,
        witness,
    })
}
