//! Acceptance suite: every criterion prints one PASS or FAIL line and the
//! process exits non-zero if any of them fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use mcsp::bench::{
    generate_instance, run_benchmark, t_test_from_summary, write_runs, write_summary,
    AlgorithmSpec, BenchConfig, Instance, Significance,
};
use mcsp::blocks::{intersect, span_in_list, union, union_into_list, BlockList, Union};
use mcsp::heuristics::{combined_heuristic, dynamic_heuristic, static_heuristic};
use mcsp::mmas::{
    choose_edge, choose_match, effective_bounds, mean_branching, solve_graph, PheromoneTable,
};
use mcsp::seeding::stream;
use mcsp::{
    exact_mcsp, greedy_mcsp, solve, validate_common_partition, Block, CommonSubstringGraph,
    HeuristicWeights, MmasParams, Occupancy, EXACT_LIMIT,
};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

/// Random related pair over a small alphabet so that repeats are common.
fn small_pair(rng: &mut impl Rng, max_len: usize) -> (Vec<u8>, Vec<u8>) {
    let n = rng.random_range(1..=max_len);
    let sigma = rng.random_range(2..=4u8);
    let x: Vec<u8> = (0..n).map(|_| b'a' + rng.random_range(0..sigma)).collect();
    let mut y = x.clone();
    y.shuffle(rng);
    (x, y)
}

fn occurs(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

fn worked_examples() -> Outcome {
    let b = |i, j| Block::x(i, j);
    ensure!(
        intersect(&b(1, 5), &b(3, 6)).ok() == Some(Some(b(3, 5))),
        "intersection of overlapping blocks"
    );
    ensure!(
        intersect(&b(1, 5), &b(6, 8)).ok() == Some(None),
        "intersection of disjoint blocks"
    );
    ensure!(
        union(&b(1, 5), &b(3, 6)).ok() == Some(Union::Merged(b(1, 6))),
        "union of overlapping blocks"
    );
    // touching blocks merge, a gap keeps them apart
    ensure!(
        union(&b(1, 5), &b(6, 8)).ok() == Some(Union::Merged(b(1, 8))),
        "union of touching blocks"
    );
    ensure!(
        union(&b(1, 5), &b(7, 8)).ok() == Some(Union::Disjoint(b(1, 5), b(7, 8))),
        "union across a gap"
    );
    let mut list = BlockList::new();
    list.insert(b(5, 7)).unwrap();
    list.insert(b(11, 12)).unwrap();
    ensure!(
        union_into_list(&list, b(8, 10)).unwrap().as_single() == Some(b(5, 12)),
        "list union collapses to one block"
    );
    let spans = [b(0, 0), b(0, 1), b(0, 2), b(4, 5)];
    ensure!(
        span_in_list(&b(0, 0), &spans).ok() == Some(3),
        "span of [0,0,0]"
    );
    ensure!(
        span_in_list(&b(4, 5), &spans).ok() == Some(2),
        "span of [0,4,5]"
    );

    let g = CommonSubstringGraph::build(b"bceabcd", b"abcdbec").unwrap();
    let occ = Occupancy::new(7);
    ensure!(g.min_span(&occ, &b(0, 0)).ok() == Some(1), "minSpan of b");
    ensure!(g.min_span(&occ, &b(0, 1)).ok() == Some(4), "minSpan of bc");
    ensure!(
        static_heuristic(&g, &b(0, 0)) == 0.25,
        "static heuristic of b"
    );
    ensure!(
        dynamic_heuristic(&g, &occ, &b(0, 0)).ok() == Some(1.0),
        "dynamic heuristic of b"
    );
    ensure!(
        combined_heuristic(&g, &occ, &b(0, 0), HeuristicWeights::default()).ok() == Some(1.25),
        "combined heuristic of b"
    );

    let g = CommonSubstringGraph::build(b"ababc", b"abcab").unwrap();
    let occ = Occupancy::new(5);
    let mut rng = stream(1, &[]);
    for _ in 0..100 {
        ensure!(
            choose_match(&g, &occ, &b(0, 1), &mut rng).ok() == Some(Block::y(3, 4)),
            "positioning must choose [1,3,4]"
        );
    }
    Ok("block algebra, spans, heuristics and positioning reproduced".into())
}

fn graph_correctness() -> Outcome {
    let g = CommonSubstringGraph::build(b"abad", b"adab").unwrap();
    let expected: BTreeSet<Block> = [(0, 0), (0, 1), (1, 1), (2, 2), (2, 3), (3, 3)]
        .into_iter()
        .map(|(i, j)| Block::x(i, j))
        .collect();
    ensure!(
        g.edges().iter().copied().collect::<BTreeSet<_>>() == expected,
        "abad edge set"
    );

    let mut rng = stream(2024, &[]);
    for case in 0..200 {
        let (x, y) = small_pair(&mut rng, 12);
        let g = CommonSubstringGraph::build(&x, &y).unwrap();
        let mut oracle = BTreeSet::new();
        for i in 0..x.len() {
            for j in i..x.len() {
                if occurs(&y, &x[i..=j]) {
                    oracle.insert(Block::x(i, j));
                }
            }
        }
        let built: BTreeSet<Block> = g.edges().iter().copied().collect();
        ensure!(
            built.len() == g.edges().len(),
            "case {case}: duplicate edges"
        );
        ensure!(
            built == oracle,
            "case {case}: edges differ for {:?}/{:?}",
            x,
            y
        );
        for e in &oracle {
            let want: Vec<Block> = (0..=y.len() - e.len())
                .filter(|&p| y[p..p + e.len()] == x[e.start..=e.end])
                .map(|p| Block::with_len(mcsp::StringId::Y, p, e.len()))
                .collect();
            ensure!(g.match_list(e) == want, "case {case}: match list of {e}");
        }
    }
    Ok("200 random pairs and the abad edge set agree with brute force".into())
}

fn t_test_rows() -> Outcome {
    let r1 = t_test_from_summary(46.0, 42.8667, 0.3519, 15, 0.05).map_err(|e| e.to_string())?;
    let r2 = t_test_from_summary(56.0, 51.8667, 0.5164, 15, 0.05).map_err(|e| e.to_string())?;
    ensure!((34.48..=34.50).contains(&r1.t), "row 1 t = {}", r1.t);
    ensure!((30.99..=31.01).contains(&r2.t), "row 2 t = {}", r2.t);
    ensure!(
        r1.significance == Significance::Better && r2.significance == Significance::Better,
        "both rows must be '+'"
    );
    Ok(format!("t = {:.4} and {:.4}, both '+'", r1.t, r2.t))
}

fn oracle_dominance() -> Outcome {
    let mut rng = stream(77, &[]);
    let params = MmasParams {
        n_ants: 20,
        max_iterations: Some(100),
        max_stale_iterations: 50,
        ..Default::default()
    };
    let mut gaps = 0;
    for case in 0..100 {
        let (x, y) = small_pair(&mut rng, 12);
        let exact = exact_mcsp(&x, &y, EXACT_LIMIT).map_err(|e| e.to_string())?;
        let greedy = greedy_mcsp(&x, &y).map_err(|e| e.to_string())?;
        let colony = solve(
            &x,
            &y,
            &MmasParams {
                seed: case,
                ..params.clone()
            },
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            validate_common_partition(&exact.witness, &x, &y).is_ok(),
            "case {case}: invalid exact witness"
        );
        ensure!(
            validate_common_partition(&greedy, &x, &y).is_ok(),
            "case {case}: invalid greedy"
        );
        ensure!(
            validate_common_partition(&colony.best.partition, &x, &y).is_ok(),
            "case {case}: invalid colony solution"
        );
        let (e, gr, m) = (exact.cost, greedy.cost(), colony.best.cost());
        ensure!(
            e <= gr && gr <= x.len(),
            "case {case}: exact {e}, greedy {gr}, n {}",
            x.len()
        );
        ensure!(e <= m, "case {case}: exact {e} above colony {m}");
        gaps += usize::from(m > e);
    }
    Ok(format!(
        "100 pairs, no violations; colony above optimum on {gaps}"
    ))
}

fn desk_optimality() -> Outcome {
    let mut detail = Vec::new();
    for (x, y) in [(&b"abad"[..], &b"adab"[..]), (b"ababcab", b"abcabab")] {
        let opt = exact_mcsp(x, y, EXACT_LIMIT)
            .map_err(|e| e.to_string())?
            .cost;
        ensure!(
            opt == 2,
            "oracle optimum of {} is {opt}",
            String::from_utf8_lossy(x)
        );
        let hits = (0..100)
            .filter(|&seed| {
                let params = MmasParams {
                    seed,
                    max_iterations: Some(1000),
                    ..Default::default()
                };
                solve(x, y, &params).is_ok_and(|o| o.best.cost() == opt)
            })
            .count();
        detail.push(format!("{}: {hits}/100", String::from_utf8_lossy(x)));
        ensure!(hits >= 95, "{}", detail.join(", "));
    }
    Ok(detail.join(", "))
}

fn pheromone_invariants() -> Outcome {
    let (x, y) = generate_instance(100, 6).unwrap();
    let g = CommonSubstringGraph::build(&x, &y).unwrap();
    let params = MmasParams {
        seed: 6,
        max_iterations: Some(1000),
        ..Default::default()
    };
    let avg = mean_branching(&g);
    let mut last = usize::MAX;
    let mut problems = Vec::new();
    let mut iterations = 0;
    let out = solve_graph(&g, &params, |view| {
        iterations += 1;
        let cost = view.state.global_best.as_ref().unwrap().cost();
        if cost > last {
            problems.push(format!(
                "global best rose {last} -> {cost} at {}",
                view.state.iteration
            ));
        }
        last = cost;
        let want = effective_bounds(cost, params.epsilon, params.p_best, g.len(), avg);
        let Some(b) = view.pheromone.bounds() else {
            problems.push(format!("no bounds at iteration {}", view.state.iteration));
            return;
        };
        if b != want {
            problems.push(format!("bounds {b:?} differ from {want:?}"));
        }
        if !view
            .pheromone
            .values()
            .iter()
            .all(|&t| b.tau_min <= t && t <= b.tau_max)
        {
            problems.push(format!(
                "trail out of bounds at iteration {}",
                view.state.iteration
            ));
        }
    });
    ensure!(problems.is_empty(), "{}", problems[0]);
    Ok(format!(
        "{iterations} iterations checked, final cost {}",
        out.best.cost()
    ))
}

fn dna_instances(count: u64, len: usize, seed: u64) -> Vec<Instance> {
    (0..count)
        .map(|k| {
            let (x, y) = generate_instance(len, seed + k).unwrap();
            Instance {
                id: format!("dna{k:02}"),
                x,
                y,
            }
        })
        .collect()
}

fn greedy_vs_colony() -> Outcome {
    let instances = dna_instances(20, 60, 500);
    let params = MmasParams {
        max_time: Duration::from_secs(30),
        ..Default::default()
    };
    let cfg = BenchConfig {
        repeats: 3,
        seed: 1,
        ..Default::default()
    };
    let algos = [AlgorithmSpec::greedy(), AlgorithmSpec::mmas("mmas", params)];
    let res = run_benchmark(&instances, &algos, &cfg).map_err(|e| e.to_string())?;
    ensure!(res.failures.is_empty(), "failed trials: {:?}", res.failures);
    let colony: Vec<_> = res
        .records
        .iter()
        .filter(|r| r.algorithm == "mmas")
        .collect();
    ensure!(colony.len() == 20, "expected 20 colony records");
    let wins = colony
        .iter()
        .filter(|r| r.mean <= r.baseline as f64)
        .count();
    let mean_diff: f64 = colony.iter().map(|r| r.difference).sum::<f64>() / 20.0;
    ensure!(wins >= 14, "colony <= greedy on {wins}/20");
    Ok(format!(
        "colony <= greedy on {wins}/20, mean difference {mean_diff:.4}"
    ))
}

fn ablation() -> Outcome {
    let instances = dna_instances(10, 60, 900);
    let cfg = BenchConfig {
        repeats: 3,
        seed: 2,
        ..Default::default()
    };
    let params = MmasParams {
        max_time: Duration::from_secs(30),
        ..Default::default()
    };
    let res = run_benchmark(&instances, &AlgorithmSpec::ablation_pair(&params), &cfg)
        .map_err(|e| e.to_string())?;
    ensure!(res.failures.is_empty(), "failed trials: {:?}", res.failures);
    let mut wins = 0;
    for inst in &instances {
        let mean = |name: &str| {
            res.records
                .iter()
                .find(|r| r.instance == inst.id && r.algorithm == name)
                .map(|r| r.mean)
        };
        let (with, without) = (mean("mmas").unwrap(), mean("mmas-static").unwrap());
        wins += usize::from(with <= without);
    }
    ensure!(wins >= 6, "dynamic heuristic not worse on {wins}/10");
    Ok(format!("dynamic heuristic not worse on {wins}/10"))
}

fn csv_bytes(instances: &[Instance], parallel: bool) -> Result<Vec<u8>, String> {
    let params = MmasParams {
        n_ants: 30,
        max_iterations: Some(40),
        parallel,
        ..Default::default()
    };
    let cfg = BenchConfig {
        repeats: 3,
        seed: 99,
        record_time: false,
        parallel,
        ..Default::default()
    };
    let res = run_benchmark(
        instances,
        &[AlgorithmSpec::greedy(), AlgorithmSpec::mmas("mmas", params)],
        &cfg,
    )
    .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    write_summary(&res.records, &mut out).map_err(|e| e.to_string())?;
    write_runs(&res.records, &mut out).map_err(|e| e.to_string())?;
    Ok(out)
}

fn determinism() -> Outcome {
    let instances = dna_instances(4, 80, 40);
    let first = csv_bytes(&instances, true)?;
    ensure!(
        first == csv_bytes(&instances, true)?,
        "parallel runs differ"
    );
    ensure!(
        first == csv_bytes(&instances, false)?,
        "parallel and sequential runs differ"
    );

    // two separate processes of the command line tool
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for inst in &instances {
        mcsp::bench::write_instance(&dir.path().join(format!("{}.txt", inst.id)), inst).unwrap();
    }
    let pattern = dir.path().join("*.txt").display().to_string();
    let run = |out: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(out);
        let status = Command::new(env!("CARGO_BIN_EXE_mcsp"))
            .args([
                "bench",
                &pattern,
                "--seed",
                "5",
                "--repeats",
                "3",
                "--no-time",
            ])
            .args([
                "--set",
                "mmas.n_ants=30",
                "--set",
                "mmas.max_iters=40",
                "--out",
            ])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            status.status.success(),
            "cli failed: {}",
            String::from_utf8_lossy(&status.stderr)
        );
        std::fs::read(out.join("summary.csv")).map_err(|e| e.to_string())
    };
    let (a, b) = (run("a")?, run("b")?);
    ensure!(a == b, "command line summaries differ");
    Ok(format!(
        "library and command line outputs identical ({} + {} bytes)",
        first.len(),
        a.len()
    ))
}

fn sampling_law() -> Outcome {
    // vertex 0 of abcd/dabc has exactly the edges a, ab, abc
    let g = CommonSubstringGraph::build(b"abcd", b"dabc").unwrap();
    let occ = Occupancy::new(4);
    let mut tau = PheromoneTable::new(&g, 1.0);
    let params = MmasParams {
        alpha: 2.0,
        beta: 2.0,
        ..Default::default()
    };
    // uneven trails: reinforce the edge `ab` through a one-block-per-edge solution
    let mut cp = mcsp::CommonPartition::new();
    cp.push(Block::x(0, 1), Block::y(1, 2));
    cp.push(Block::x(2, 2), Block::y(3, 3));
    cp.push(Block::x(3, 3), Block::y(0, 0));
    tau.deposit(&mcsp::Solution::from_partition(&g, cp), 1.0);

    let candidates = [Block::x(0, 0), Block::x(0, 1), Block::x(0, 2)];
    let weights: Vec<f64> = candidates
        .iter()
        .map(|c| {
            let t = tau.get(g.edge_id(c).unwrap());
            let eta = combined_heuristic(&g, &occ, c, params.weights).unwrap();
            t.powf(params.alpha) * eta.powf(params.beta)
        })
        .collect();
    let total: f64 = weights.iter().sum();
    let expected: Vec<f64> = weights.iter().map(|w| w / total).collect();

    let mut rng = stream(10, &[]);
    let mut counts = [0usize; 3];
    let draws = 100_000;
    for _ in 0..draws {
        let e = choose_edge(&g, &occ, 0, 0, &tau, &params, &mut rng).map_err(|e| e.to_string())?;
        let k = candidates
            .iter()
            .position(|c| *c == e)
            .ok_or(format!("unexpected edge {e}"))?;
        counts[k] += 1;
    }
    let observed: Vec<f64> = counts.iter().map(|&c| c as f64 / draws as f64).collect();
    for k in 0..3 {
        ensure!(
            (observed[k] - expected[k]).abs() <= 0.02,
            "edge {}: observed {:.4}, expected {:.4}",
            candidates[k],
            observed[k],
            expected[k]
        );
    }
    Ok(format!(
        "observed {:.4}/{:.4}/{:.4} vs {:.4}/{:.4}/{:.4}",
        observed[0], observed[1], observed[2], expected[0], expected[1], expected[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("worked examples", worked_examples),
        ("graph correctness", graph_correctness),
        ("t-test reproduction", t_test_rows),
        ("oracle dominance", oracle_dominance),
        ("optimality at desk scale", desk_optimality),
        ("pheromone invariants", pheromone_invariants),
        ("greedy vs colony trend", greedy_vs_colony),
        ("dynamic heuristic ablation", ablation),
        ("determinism", determinism),
        ("sampling law", sampling_law),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
