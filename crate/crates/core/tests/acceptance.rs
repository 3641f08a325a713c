//! Acceptance suite: one line per criterion, nonzero exit on any failure not
//! listed in `UNATTAINABLE`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use deltastar_core::oracle::{audit, oracle_delta, oracle_global, oracle_psp, transitive_closure};
use deltastar_core::{
    cartesian_product, classify_quasi_product, compute_delta_star, compute_delta_star_parallel,
    compute_global_coloring, format_classes, generate, EdgeColoring, Graph, MergeCost, Partition,
    RunStats,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest vertex count enumerated exhaustively.
const EXHAUSTIVE_MAX_N: usize = 7;
/// Connected graphs on 1..=7 vertices up to isomorphism.
const CONNECTED_GRAPH_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(120);

const GLOBAL_CASES: usize = 500;
const GLOBAL_MAX_N: usize = 10;
const STRUCTURE_CASES: usize = 500;
const STRUCTURE_MAX_N: usize = 10;
const PARALLEL_CASES: usize = 200;
const PARALLEL_MAX_N: usize = 12;
const PARALLEL_BLOCKS: std::ops::RangeInclusive<usize> = 2..=4;
const WORKER_COUNTS: [usize; 3] = [1, 2, 8];
const PRODUCT_CASES: usize = 100;
const FACTOR_MAX_N: usize = 6;

const GRID_SIDES: [usize; 4] = [16, 32, 64, 128];
/// Allowed growth of wall time per quadrupling of the edge count.
const MAX_GROWTH_PER_QUADRUPLING: f64 = 6.0;
const LARGEST_GRID_BUDGET: Duration = Duration::from_secs(10);
/// Each timing is the minimum over at least `TIMING_MIN_RUNS` runs, repeated
/// until `TIMING_WINDOW` has elapsed.
const TIMING_MIN_RUNS: usize = 5;
const TIMING_WINDOW: Duration = Duration::from_millis(300);

const SEED: u64 = 0x5eed_de17a;

/// Criteria whose statement is false as written; they are still evaluated
/// and reported as failures but do not fail the process.
const UNATTAINABLE: &[&str] = &["C5"];

struct Outcome {
    id: &'static str,
    name: &'static str,
    passed: bool,
    detail: String,
}

/// Worst merge cost seen, relative to `k log2 k + k`.
#[derive(Default)]
struct MergeAudit {
    runs: usize,
    violations: usize,
    worst: Option<MergeCost>,
}

impl MergeAudit {
    fn record(&mut self, cost: MergeCost) {
        self.runs += 1;
        let limit = cost.bound() + cost.colors as f64;
        if cost.relabels as f64 > limit {
            self.violations += 1;
        }
        let ratio = |c: &MergeCost| c.relabels as f64 / (c.bound() + c.colors as f64).max(1.0);
        if self.worst.as_ref().is_none_or(|w| ratio(&cost) > ratio(w)) {
            self.worst = Some(cost);
        }
    }

    fn record_run(&mut self, stats: &RunStats) {
        self.record(stats.global_merge);
        self.record(stats.psp.worst_local_merge);
    }
}

fn delta_star_oracle(g: &Graph) -> EdgeColoring {
    transitive_closure(&oracle_delta(g))
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let max_m = n * (n - 1) / 2;
    let m = rng.gen_range(n - 1..=max_m.min(3 * n));
    generate::random_connected(n, m, rng)
}

fn c1_exhaustive(merges: &mut MergeAudit) -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    let mut mismatches = Vec::new();
    let mut count_errors = Vec::new();
    for n in 1..=EXHAUSTIVE_MAX_N {
        let family = generate::connected_graphs(n);
        if family.len() != CONNECTED_GRAPH_COUNTS[n - 1] {
            count_errors.push(format!("n={n}: {} graphs", family.len()));
        }
        for g in family {
            graphs += 1;
            let fast = compute_delta_star(&g, 0).unwrap();
            merges.record_run(&fast.stats);
            if fast.coloring != delta_star_oracle(&g) {
                mismatches.push(format!("{:?}", g.edges()));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "C1",
        name: "delta* equals closure of oracle delta, all connected graphs n<=7",
        passed: mismatches.is_empty() && count_errors.is_empty() && elapsed < EXHAUSTIVE_BUDGET,
        detail: format!(
            "{graphs} graphs, {} mismatches, enumeration count errors {:?}, {:.2?} (budget {:?}){}",
            mismatches.len(),
            count_errors,
            elapsed,
            EXHAUSTIVE_BUDGET,
            mismatches
                .first()
                .map(|m| format!(", first: {m}"))
                .unwrap_or_default()
        ),
    }
}

fn c2_global(merges: &mut MergeAudit) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut partial_mismatches = 0;
    let mut full_mismatches = 0;
    for _ in 0..GLOBAL_CASES {
        let g = random_graph(&mut rng, GLOBAL_MAX_N);
        let n = g.vertex_count();
        let size = rng.gen_range(1..=n);
        let seed = rng.gen_range(0..n);
        let w = generate::random_connected_subset(&g, seed, size, &mut rng);
        let fast = compute_global_coloring(&g, &w, w[0]).unwrap();
        merges.record_run(&fast.stats);
        if fast.coloring != oracle_global(&g, &w).unwrap() {
            partial_mismatches += 1;
        }
        let all: Vec<_> = (0..n).collect();
        let fast_all = compute_global_coloring(&g, &all, seed).unwrap();
        merges.record_run(&fast_all.stats);
        let oracle_all = oracle_global(&g, &all).unwrap();
        if fast_all.coloring != oracle_all || oracle_all != delta_star_oracle(&g) {
            full_mismatches += 1;
        }
    }
    Outcome {
        id: "C2",
        name: "global coloring equals oracle on random connected W",
        passed: partial_mismatches == 0 && full_mismatches == 0,
        detail: format!(
            "{GLOBAL_CASES} graphs: {partial_mismatches} mismatches for random W, {full_mismatches} for W=V"
        ),
    }
}

fn c3_k23() -> Outcome {
    let g = generate::complete_bipartite(2, 3);
    let report = classify_quasi_product(&g);
    let oracle_classes = delta_star_oracle(&g).class_count();
    Outcome {
        id: "C3",
        name: "K_{2,3} has one class and is not a quasi product",
        passed: report.delta_star_classes == 1 && !report.is_quasi_product && oracle_classes == 1,
        detail: format!(
            "classes {}, oracle classes {oracle_classes}, is_quasi_product {}",
            report.delta_star_classes, report.is_quasi_product
        ),
    }
}

fn c4_golden() -> Outcome {
    let mut cases: Vec<(String, Graph, usize)> = vec![
        ("C4".into(), generate::cycle(4), 2),
        ("Q3".into(), generate::hypercube(3), 3),
    ];
    for k in 2..=6 {
        cases.push((format!("grid {k}x{k}"), generate::grid(k, k), 2));
    }
    let mut bad = Vec::new();
    for (name, g, expected) in &cases {
        let fast = compute_delta_star(g, 0).unwrap().class_count;
        let slow = delta_star_oracle(g).class_count();
        if fast != *expected || slow != *expected {
            bad.push(format!(
                "{name}: fast {fast}, oracle {slow}, expected {expected}"
            ));
        }
    }
    Outcome {
        id: "C4",
        name: "golden class counts for C4, Q3 and square grids",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} graphs match", cases.len())
        } else {
            bad.join("; ")
        },
    }
}

fn c5_psp_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (mut opposite, mut squares, mut meets, mut host_iso, mut star_iso) = (0, 0, 0, 0, 0);
    let mut host_example = None;
    let mut centers = 0;
    for _ in 0..STRUCTURE_CASES {
        let g = random_graph(&mut rng, STRUCTURE_MAX_N);
        for c in 0..g.vertex_count() {
            centers += 1;
            let psp = oracle_psp(&g, c);
            opposite += audit::non_primal_opposite_once(&g, &psp).len();
            squares += audit::cross_class_primal_squares(&g, &psp).len();
            let host = audit::psp_is_isometric(&g, &psp);
            if host_example.is_none() && !host.is_empty() {
                host_example = Some(format!("{} on {:?}", host[0], g.edges()));
            }
            host_iso += host.len();
            star_iso += audit::psp_is_isometric_in_star_product(&g, &psp).len();
        }
        let n = g.vertex_count();
        let seed = rng.gen_range(0..n);
        let size = rng.gen_range(1..=n);
        let w = generate::random_connected_subset(&g, seed, size, &mut rng);
        let global = compute_global_coloring(&g, &w, w[0]).unwrap().coloring;
        meets += audit::every_vertex_meets_every_class(&g, &w, &global).len();
    }
    let k3 = generate::complete(3);
    let k3_host = audit::psp_is_isometric(&k3, &oracle_psp(&k3, 0)).len();
    Outcome {
        id: "C5",
        name: "PSP structure at every center of random graphs",
        passed: opposite + squares + meets + host_iso == 0,
        detail: format!(
            "{STRUCTURE_CASES} graphs, {centers} centers: opposite-once {opposite}, \
             cross-class squares {squares}, W meets every class {meets}, \
             isometric in star product {star_iso}, isometric in host graph {host_iso} \
             (K3 alone gives {k3_host}){}",
            host_example
                .map(|e| format!("; first host violation: {e}"))
                .unwrap_or_default()
        ),
    }
}

fn c6_parallel(merges: &mut MergeAudit) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut partition_mismatches = 0;
    let mut report_mismatches = 0;
    let mut runs = 0;
    let mut cases = 0;
    let mut stacks_insufficient = 0;
    while cases < PARALLEL_CASES {
        let g = random_graph(&mut rng, PARALLEL_MAX_N);
        let k = rng.gen_range(PARALLEL_BLOCKS);
        if g.vertex_count() < k {
            continue;
        }
        cases += 1;
        let p = Partition::new(generate::random_partition(&g, k, &mut rng));
        let seq = compute_delta_star(&g, 0).unwrap();
        merges.record_run(&seq.stats);
        let seq_report = format_classes(&g, &seq.coloring);
        for workers in WORKER_COUNTS {
            runs += 1;
            let par = compute_delta_star_parallel(&g, &p, workers).unwrap();
            merges.record(par.stats.merge);
            for block in &par.stats.block_runs {
                merges.record_run(block);
            }
            if !par.stats.boundary_stacks_sufficient {
                stacks_insufficient += 1;
            }
            if par.result.coloring != seq.coloring {
                partition_mismatches += 1;
            }
            if format_classes(&g, &par.result.coloring) != seq_report {
                report_mismatches += 1;
            }
        }
    }
    Outcome {
        id: "C6",
        name: "parallel result equals sequential for 1, 2 and 8 workers",
        passed: partition_mismatches == 0 && report_mismatches == 0,
        detail: format!(
            "{cases} graphs, {runs} runs: {partition_mismatches} partition mismatches, \
             {report_mismatches} report mismatches; boundary stacks alone insufficient in \
             {stacks_insufficient} runs"
        ),
    }
}

fn c7_merge_cost(merges: &MergeAudit) -> Outcome {
    let worst = merges.worst.unwrap_or_default();
    Outcome {
        id: "C7",
        name: "relabel count within k log2 k + k",
        passed: merges.violations == 0,
        detail: format!(
            "{} color graphs, {} violations, tightest: {} relabels for k = {} (limit {:.1})",
            merges.runs,
            merges.violations,
            worst.relabels,
            worst.colors,
            worst.bound() + worst.colors as f64
        ),
    }
}

fn time_grid(side: usize) -> Duration {
    let g = generate::grid(side, side);
    let window = Instant::now();
    let mut best = Duration::MAX;
    let mut runs = 0;
    while runs < TIMING_MIN_RUNS || window.elapsed() < TIMING_WINDOW {
        let start = Instant::now();
        let r = compute_delta_star(&g, 0).unwrap();
        best = best.min(start.elapsed());
        assert_eq!(r.class_count, 2);
        runs += 1;
    }
    best
}

fn c8_timing() -> Outcome {
    let times: Vec<Duration> = GRID_SIDES.iter().map(|&k| time_grid(k)).collect();
    let growth: Vec<f64> = times
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9))
        .collect();
    let largest = *times.last().unwrap();
    let passed =
        growth.iter().all(|&r| r <= MAX_GROWTH_PER_QUADRUPLING) && largest < LARGEST_GRID_BUDGET;
    let listing: Vec<String> = GRID_SIDES
        .iter()
        .zip(&times)
        .map(|(k, t)| format!("{k}^2 {t:.2?}"))
        .collect();
    Outcome {
        id: "C8",
        name: "near-linear time on square grids",
        passed,
        detail: format!(
            "{}; growth per quadrupling {:?} (limit {MAX_GROWTH_PER_QUADRUPLING}); largest {largest:.2?} (budget {LARGEST_GRID_BUDGET:?})",
            listing.join(", "),
            growth.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
        ),
    }
}

fn c9_products() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut violations = 0;
    for _ in 0..PRODUCT_CASES {
        let g1 = random_graph(&mut rng, FACTOR_MAX_N);
        let g2 = random_graph(&mut rng, FACTOR_MAX_N);
        let p = cartesian_product(&g1, &g2);
        let fast = compute_delta_star(&p.graph, 0).unwrap().coloring;
        let slow = delta_star_oracle(&p.graph);
        for coloring in [&fast, &slow] {
            for (_, edges) in coloring.classes() {
                let f = p.factor_of_edge[edges[0]];
                if edges.iter().any(|&e| p.factor_of_edge[e] != f) {
                    violations += 1;
                }
            }
        }
    }
    Outcome {
        id: "C9",
        name: "delta* classes lie inside one product factor",
        passed: violations == 0,
        detail: format!("{PRODUCT_CASES} products, {violations} classes crossing factors"),
    }
}

fn main() -> ExitCode {
    let mut merges = MergeAudit::default();
    let mut outcomes = vec![
        c1_exhaustive(&mut merges),
        c2_global(&mut merges),
        c3_k23(),
        c4_golden(),
        c5_psp_structure(),
        c6_parallel(&mut merges),
    ];
    outcomes.push(c7_merge_cost(&merges));
    outcomes.push(c8_timing());
    outcomes.push(c9_products());

    let mut blocking = 0;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if !o.passed && UNATTAINABLE.contains(&o.id) {
            " [known unattainable]"
        } else {
            ""
        };
        println!("{status} {} {}{note}: {}", o.id, o.name, o.detail);
        if !o.passed && !UNATTAINABLE.contains(&o.id) {
            blocking += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    if blocking == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
