//! Solvers for the minimum common string partition problem.
//!
//! Given two related strings (same characters, same multiplicities), find
//! the fewest blocks that cut both into the same multiset of substrings.
//! The crate provides:
//!
//! - [`mmas`]: a MAX-MIN ant system over the common substring graph,
//! - [`greedy`]: the longest-common-substring-first baseline,
//! - [`exact`]: an exhaustive oracle for instances up to a few dozen bits,
//! - [`bench`]: instance generation, FASTA input, t-tests and CSV reports.
//!
//! With the default `parallel` feature the ants of one iteration and the
//! instances of a benchmark are processed on the rayon pool; results are
//! identical either way.
//!
//! ```
//! use mcsp::{greedy_mcsp, solve, validate_common_partition, MmasParams};
//!
//! let (x, y) = (b"ABABCAB", b"ABCABAB");
//! let greedy = greedy_mcsp(x, y)?;
//! let params = MmasParams { seed: 1, max_iterations: Some(200), ..Default::default() };
//! let colony = solve(x, y, &params)?;
//! assert_eq!(colony.best.cost(), 2);
//! assert!(colony.best.cost() <= greedy.cost());
//! assert_eq!(validate_common_partition(&colony.best.partition, x, y), Ok(()));
//! # Ok::<(), mcsp::McspError>(())
//! ```

pub mod bench;
pub mod blocks;
pub mod config;
pub mod csgraph;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod heuristics;
pub mod mmas;
pub mod seeding;

pub use blocks::{related, validate_common_partition, Block, CommonPartition, StringId};
pub use csgraph::{CommonSubstringGraph, Occupancy};
pub use error::{McspError, Result};
pub use exact::{exact_mcsp, EXACT_LIMIT};
pub use greedy::greedy_mcsp;
pub use heuristics::HeuristicWeights;
pub use mmas::{solve, MmasParams, Solution};
