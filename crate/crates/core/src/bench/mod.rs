//! Benchmark harness: instances, statistics, tuning and CSV reports.

pub mod dataset;
pub mod fasta;
pub mod report;
pub mod runner;
pub mod stats;
pub mod tuning;

pub use dataset::{
    generate_group, generate_instance, load_instances, read_instance, write_instance, Instance,
    InstanceSpec, LengthGroup,
};
pub use fasta::{instances_from_records, load_fasta, select_by_length, FastaRecord};
pub use report::{read_records, write_runs, write_series, write_summary, RunResult, TrialRecord};
pub use runner::{
    run_benchmark, AlgorithmKind, AlgorithmSpec, BenchConfig, BenchResult, TrialFailure,
};
pub use stats::{t_test, t_test_from_summary, Significance, TTest};
pub use tuning::{run_tuning, tuning_rank, GridPoint, ParamGrid, RankEntry, TuningRank};
