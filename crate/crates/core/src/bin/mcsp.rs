//! Command line front end: generate instances, solve one, benchmark many,
//! or tune the colony parameters.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use mcsp::bench::{
    self, generate_group, instances_from_records, load_fasta, load_instances, select_by_length,
    write_instance, AlgorithmSpec, Instance, LengthGroup, ParamGrid,
};
use mcsp::config::Config;
use mcsp::mmas::solve_graph;
use mcsp::{exact_mcsp, greedy_mcsp, CommonPartition, CommonSubstringGraph, McspError, Result};

#[derive(Parser)]
#[command(
    name = "mcsp",
    version,
    about = "Minimum common string partition solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write random DNA instances (or pairs built from a FASTA file).
    Gen(GenArgs),
    /// Solve one instance and print the partition.
    Solve(SolveArgs),
    /// Run algorithms over many instances and write CSV reports.
    Bench(BenchArgs),
    /// Rank the colony parameter grid on a set of instances.
    Tune(TuneArgs),
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` settings, applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Root random seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl Common {
    fn load(&self) -> Result<Config> {
        let mut cfg = match &self.config {
            Some(p) => Config::from_file(p)?,
            None => Config::default(),
        };
        cfg.apply_overrides(&self.overrides)?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct FastaSource {
    /// Build instances from a FASTA file: each sequence against a seeded
    /// shuffle of itself.
    #[arg(long)]
    fasta: Option<PathBuf>,
    /// Keep FASTA records at least this long.
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    /// Keep FASTA records at most this long.
    #[arg(long, default_value_t = usize::MAX)]
    max_len: usize,
    /// Keep at most this many FASTA records.
    #[arg(long)]
    limit: Option<usize>,
}

impl FastaSource {
    fn instances(&self, path: &Path, seed: u64) -> Result<Vec<Instance>> {
        let records = select_by_length(load_fasta(path)?, self.min_len, self.max_len, self.limit);
        Ok(instances_from_records(&records, seed))
    }
}

#[derive(Args)]
struct GenArgs {
    /// Output directory for the instance files.
    #[arg(long, short)]
    out: PathBuf,
    /// Number of instances.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Length group: 1, 2, 3 or `min-max`.
    #[arg(long, default_value = "1")]
    group: String,
    #[arg(long, default_value = "inst")]
    prefix: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    fasta: FastaSource,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Greedy,
    Mmas,
    Exact,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (two lines, X then Y).
    instance: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algo::Mmas)]
    algo: Algo,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    fasta: FastaSource,
    /// Which FASTA record to solve (0-based, after filtering).
    #[arg(long, default_value_t = 0)]
    record: usize,
    /// Write per-iteration colony telemetry to this CSV file.
    #[arg(long)]
    telemetry: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance files or glob patterns.
    instances: Vec<String>,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    fasta: FastaSource,
    /// Algorithms to compare, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "greedy,mmas")]
    algos: Vec<Algo>,
    /// Also run the colony without the dynamic heuristic and write the
    /// paired series.
    #[arg(long)]
    ablation: bool,
    #[arg(long)]
    repeats: Option<usize>,
    /// Write zero times so that files are reproducible byte for byte.
    #[arg(long)]
    no_time: bool,
    /// Output directory.
    #[arg(long, short, default_value = "bench-out")]
    out: PathBuf,
}

#[derive(Args)]
struct TuneArgs {
    /// Instance files or glob patterns.
    instances: Vec<String>,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    fasta: FastaSource,
    /// Runs per instance and setting.
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Ranking CSV; printed to stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Tune(a) => tune(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // output piped into a pager or `head` that exited early
        Err(McspError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn gen(args: GenArgs) -> Result<()> {
    let instances = match &args.fasta.fasta {
        Some(path) => args.fasta.instances(path, args.seed)?,
        None => {
            let group = LengthGroup::parse(&args.group).ok_or_else(|| McspError::BadValue {
                key: "--group".into(),
                value: args.group.clone(),
            })?;
            generate_group(group, args.count, args.seed, &args.prefix)?
        }
    };
    fs::create_dir_all(&args.out)?;
    for inst in &instances {
        let path = args.out.join(format!("{}.txt", sanitize(&inst.id)));
        write_instance(&path, inst)?;
        writeln!(io::stdout(), "{}", path.display())?;
    }
    Ok(())
}

/// File-name-safe version of a record id.
fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn gather(patterns: &[String], fasta: &FastaSource, seed: u64) -> Result<Vec<Instance>> {
    let mut instances = load_instances(patterns)?;
    if let Some(path) = &fasta.fasta {
        instances.extend(fasta.instances(path, seed)?);
    }
    if instances.is_empty() {
        return Err(McspError::EmptyInput("instances"));
    }
    Ok(instances)
}

fn print_partition(cp: &CommonPartition, x: &[u8]) -> Result<()> {
    writeln!(io::stdout(), "cost {}", cp.cost())?;
    for (fx, ty) in cp.partition.iter().zip(&cp.mapped) {
        writeln!(
            io::stdout(),
            "{fx} -> {ty}  {}",
            String::from_utf8_lossy(fx.slice(x))
        )?;
    }
    Ok(())
}

fn solve(args: SolveArgs) -> Result<()> {
    let mut cfg = args.common.load()?;
    if let Some(seed) = args.common.seed {
        cfg.mmas.seed = seed;
    }
    let inst = match (&args.instance, &args.fasta.fasta) {
        (Some(path), None) => bench::read_instance(path)?,
        (None, Some(path)) => {
            let mut all = args.fasta.instances(path, cfg.mmas.seed)?;
            if args.record >= all.len() {
                return Err(McspError::BadValue {
                    key: "--record".into(),
                    value: format!("{} of {} records", args.record, all.len()),
                });
            }
            all.swap_remove(args.record)
        }
        _ => {
            return Err(McspError::InvalidParam {
                name: "instance",
                reason: "give exactly one of an instance file or --fasta".into(),
            })
        }
    };
    info!("{}: length {}", inst.id, inst.len());
    match args.algo {
        Algo::Greedy => print_partition(&greedy_mcsp(&inst.x, &inst.y)?, &inst.x)?,
        Algo::Exact => print_partition(
            &exact_mcsp(&inst.x, &inst.y, cfg.exact_limit)?.witness,
            &inst.x,
        )?,
        Algo::Mmas => {
            cfg.mmas.validate()?;
            let g = CommonSubstringGraph::build(&inst.x, &inst.y)?;
            let out = solve_graph(&g, &cfg.mmas, |_| {});
            print_partition(&out.best.partition.sorted_by_x(), &inst.x)?;
            writeln!(
                io::stdout(),
                "run {} time_to_best {:.4}s iterations {}",
                out.run_of_best,
                out.time_to_best.as_secs_f64(),
                out.telemetry.total_iterations()
            )?;
            if let Some(path) = &args.telemetry {
                out.telemetry
                    .write_csv(BufWriter::new(File::create(path)?))?;
            }
        }
    }
    Ok(())
}

fn bench_cmd(args: BenchArgs) -> Result<()> {
    let mut cfg = args.common.load()?;
    if let Some(seed) = args.common.seed {
        cfg.bench.seed = seed;
    }
    if let Some(r) = args.repeats {
        cfg.bench.repeats = r;
    }
    if args.no_time {
        cfg.bench.record_time = false;
    }
    let instances = gather(&args.instances, &args.fasta, cfg.bench.seed)?;

    let mut algos = Vec::new();
    for algo in &args.algos {
        match algo {
            Algo::Greedy => algos.push(AlgorithmSpec::greedy()),
            Algo::Exact => algos.push(AlgorithmSpec::exact(cfg.exact_limit)),
            Algo::Mmas if args.ablation => {}
            Algo::Mmas => algos.push(AlgorithmSpec::mmas("mmas", cfg.mmas.clone())),
        }
    }
    if args.ablation {
        algos.extend(AlgorithmSpec::ablation_pair(&cfg.mmas));
    }

    let result = bench::run_benchmark(&instances, &algos, &cfg.bench)?;
    for f in &result.failures {
        warn!("{} / {}: {}", f.instance, f.algorithm, f.error);
    }
    fs::create_dir_all(&args.out)?;
    let summary = args.out.join("summary.csv");
    bench::write_summary(&result.records, BufWriter::new(File::create(&summary)?))?;
    bench::write_runs(
        &result.records,
        BufWriter::new(File::create(args.out.join("runs.csv"))?),
    )?;
    if args.ablation {
        let path = args.out.join("ablation.csv");
        bench::write_series(
            &result.records,
            "mmas",
            "mmas-static",
            BufWriter::new(File::create(path)?),
        )?;
    }
    let mut stdout = io::stdout().lock();
    write!(stdout, "{}", fs::read_to_string(&summary)?)?;
    if !result.failures.is_empty() {
        eprintln!("{} trial(s) failed", result.failures.len());
    }
    Ok(())
}

fn tune(args: TuneArgs) -> Result<()> {
    let mut cfg = args.common.load()?;
    if let Some(seed) = args.common.seed {
        cfg.mmas.seed = seed;
    }
    let instances = gather(&args.instances, &args.fasta, cfg.mmas.seed)?;
    let rank = bench::run_tuning(&instances, &ParamGrid::standard(), &cfg.mmas, args.repeats)?;
    writeln!(
        io::stdout(),
        "best: {} (R = {:.4})",
        rank.winner().point,
        rank.winner().score
    )?;
    match &args.out {
        Some(path) => rank.write_csv(BufWriter::new(File::create(path)?))?,
        None => rank.write_csv(io::stdout().lock())?,
    }
    Ok(())
}
