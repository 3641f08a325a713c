use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use deltastar_core::graph::{parse_vertex_list, Graph, VertexId};
use deltastar_core::oracle::{oracle_delta, oracle_global, oracle_psp, transitive_closure};
use deltastar_core::{
    cartesian_product, compute_delta_star, compute_delta_star_parallel, compute_global_coloring,
    emit_dot, format_classes, generate, parse_graph, parse_partition, ColoringDifference,
    EdgeColoring, GlobalColoringState, PspContext, QuasiProductReport, RunStats,
};
use rand::SeedableRng;

/// Edge classes of the relation δ* and quasi Cartesian product recognition.
#[derive(Parser, Debug)]
#[command(name = "deltastar", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a built-in graph as an edge list.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Edge list: two vertex ids per line, `#` comments.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::DeltaStar)]
    mode: Mode,
    /// Start vertex (input id). Defaults to vertex 0.
    #[arg(long)]
    root: Option<u64>,
    /// Treated vertex set for `--mode global`.
    #[arg(long)]
    w_set: Option<PathBuf>,
    /// One block of input ids per line, for `--mode parallel`.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Worker threads for `--mode parallel`.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Classes)]
    format: Format,
    /// Recompute by brute force and exit with status 3 on disagreement.
    #[arg(long)]
    oracle_check: bool,
    /// Report counters and timing (on stderr, or inside the JSON report).
    #[arg(long)]
    stats: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    DeltaStar,
    Psp,
    Global,
    Quasi,
    Parallel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Classes,
    Dot,
    JsonReport,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// `path:N`, `cycle:N`, `star:K`, `complete:N`, `bipartite:A,B`,
    /// `grid:R,C`, `hypercube:D`, `prism:K`, `mobius:K` or `random:N,M,SEED`.
    family: String,
    /// Further factors of a Cartesian product, same syntax.
    #[arg(long = "times")]
    times: Vec<String>,
}

enum Failure {
    Invalid(anyhow::Error),
    Mismatch(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Some(Command::Generate(args)) => generate_command(&args).map_err(Failure::from),
        None => run(&cli.run),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("oracle mismatch: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn resolve(g: &Graph, label: u64) -> Result<VertexId> {
    g.vertex_of_label(label)
        .ok_or_else(|| anyhow!("vertex {label} does not occur in the graph"))
}

/// Vertex with input id 0 when present, else the first dense vertex.
fn default_root(g: &Graph) -> VertexId {
    g.vertex_of_label(0).unwrap_or(0)
}

struct Computed {
    coloring: EdgeColoring,
    quasi: Option<QuasiProductReport>,
    stats: serde_json::Value,
}

fn run_stats_json(s: &RunStats) -> serde_json::Value {
    serde_json::json!({
        "centers": s.psp.centers,
        "scan_touches": s.psp.scan_touches,
        "scan_bound": s.psp.scan_bound,
        "stack_pushes": s.psp.stack_pushes,
        "fresh_colors": s.fresh_colors,
        "global_colors": s.global_merge.colors,
        "global_relabels": s.global_merge.relabels,
    })
}

fn validate(args: &RunArgs) -> Result<()> {
    if args.input.is_none() {
        bail!("--input is required");
    }
    if (args.mode == Mode::Parallel) != args.partition.is_some() {
        bail!("--partition is required with --mode parallel and only allowed there");
    }
    if (args.mode == Mode::Global) != args.w_set.is_some() {
        bail!("--w-set is required with --mode global and only allowed there");
    }
    if args.workers.is_some() && args.mode != Mode::Parallel {
        bail!("--workers is only allowed with --mode parallel");
    }
    if args.workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    Ok(())
}

fn run(args: &RunArgs) -> Result<(), Failure> {
    validate(args)?;
    let input = args.input.as_deref().expect("validated");
    let g = parse_graph(&read(input)?).with_context(|| format!("{}", input.display()))?;
    let root = match args.root {
        Some(label) => Some(resolve(&g, label)?),
        None => None,
    };

    let start = Instant::now();
    let (computed, oracle) = match args.mode {
        Mode::DeltaStar | Mode::Quasi => {
            let r = compute_delta_star(&g, root.unwrap_or_else(|| default_root(&g)))
                .map_err(anyhow::Error::from)?;
            let quasi = QuasiProductReport::from_coloring(&r.coloring);
            let computed = Computed {
                stats: run_stats_json(&r.stats),
                coloring: r.coloring,
                quasi: Some(quasi),
            };
            (
                computed,
                args.oracle_check
                    .then(|| transitive_closure(&oracle_delta(&g))),
            )
        }
        Mode::Psp => {
            let c = root.unwrap_or_else(|| default_root(&g));
            let mut state = GlobalColoringState::seeded(&g, c);
            let mut ctx = PspContext::new(&g);
            ctx.recognize(&g, c, &mut state)
                .map_err(anyhow::Error::from)?;
            let psp = ctx.psp(&g);
            let computed = Computed {
                coloring: psp.local_coloring(g.edge_count()),
                quasi: None,
                stats: serde_json::json!({
                    "center": g.label(c),
                    "primal_edges": psp.primal_edges().count(),
                    "non_primal_edges": psp.non_primal_edges().count(),
                    "stack_pushes": ctx.stats().stack_pushes,
                }),
            };
            (
                computed,
                args.oracle_check
                    .then(|| oracle_psp(&g, c).local_coloring()),
            )
        }
        Mode::Global => {
            let path = args.w_set.as_deref().expect("validated");
            let w = parse_vertex_list(&g, &read(path)?)
                .with_context(|| format!("{}", path.display()))?;
            if w.is_empty() {
                return Err(anyhow!("{}: treated set is empty", path.display()).into());
            }
            let v0 = match root {
                Some(v) => v,
                None if w.contains(&default_root(&g)) => default_root(&g),
                None => w[0],
            };
            let r = compute_global_coloring(&g, &w, v0).map_err(anyhow::Error::from)?;
            let computed = Computed {
                stats: run_stats_json(&r.stats),
                coloring: r.coloring,
                quasi: None,
            };
            let oracle = match args.oracle_check {
                true => Some(oracle_global(&g, &w).map_err(anyhow::Error::from)?),
                false => None,
            };
            (computed, oracle)
        }
        Mode::Parallel => {
            let path = args.partition.as_deref().expect("validated");
            let p =
                parse_partition(&g, &read(path)?).with_context(|| format!("{}", path.display()))?;
            let workers = args
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let r = compute_delta_star_parallel(&g, &p, workers).map_err(anyhow::Error::from)?;
            let mut stats = run_stats_json(&r.result.stats);
            stats["blocks"] = r.stats.blocks.into();
            stats["workers"] = r.stats.workers.into();
            stats["multi_colored_edges"] = r.stats.multi_colored_edges.into();
            stats["boundary_stack_edges"] = r.stats.boundary_stack_edges.into();
            stats["boundary_stacks_sufficient"] = r.stats.boundary_stacks_sufficient.into();
            stats["merge_relabels"] = r.stats.merge.relabels.into();
            let quasi = QuasiProductReport::from_coloring(&r.result.coloring);
            let computed = Computed {
                coloring: r.result.coloring,
                quasi: Some(quasi),
                stats,
            };
            (
                computed,
                args.oracle_check
                    .then(|| transitive_closure(&oracle_delta(&g))),
            )
        }
    };
    let elapsed = start.elapsed();

    if let Some(expected) = oracle {
        if let Some(diff) = computed.coloring.first_difference(&expected) {
            return Err(Failure::Mismatch(describe(&g, diff)));
        }
    }

    let mut out = String::new();
    match args.format {
        Format::Classes => {
            if let Some(q) = &computed.quasi {
                if args.mode == Mode::Quasi {
                    let _ = writeln!(out, "is_quasi_product: {}", q.is_quasi_product);
                    let _ = writeln!(out, "class_count: {}", q.delta_star_classes);
                }
            }
            out.push_str(&format_classes(&g, &computed.coloring));
        }
        Format::Dot => out.push_str(&emit_dot(&g, &computed.coloring)),
        Format::JsonReport => {
            let classes: Vec<Vec<String>> = computed
                .coloring
                .classes()
                .into_iter()
                .map(|(_, edges)| {
                    edges
                        .iter()
                        .map(|&e| EdgeColoring::edge_name(&g, e))
                        .collect()
                })
                .collect();
            let mut report = serde_json::json!({
                "schema": 1,
                "mode": mode_name(args.mode),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "class_count": computed.coloring.class_count(),
                "class_sizes": computed.coloring.class_sizes(),
                "is_quasi_product": computed.quasi.as_ref().map(|q| q.is_quasi_product),
                "covered_edges": computed.coloring.covered_edges(),
                "classes": classes,
            });
            if args.stats {
                report["timing"] = serde_json::json!({ "compute_ms": elapsed.as_secs_f64() * 1e3 });
                report["stats"] = computed.stats.clone();
            }
            out.push_str(&serde_json::to_string_pretty(&report).expect("serializable"));
            out.push('\n');
        }
    }
    print!("{out}");
    if args.stats && args.format != Format::JsonReport {
        let mut stats = computed.stats;
        stats["compute_ms"] = (elapsed.as_secs_f64() * 1e3).into();
        eprintln!("{stats}");
    }
    Ok(())
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::DeltaStar => "delta-star",
        Mode::Psp => "psp",
        Mode::Global => "global",
        Mode::Quasi => "quasi",
        Mode::Parallel => "parallel",
    }
}

fn describe(g: &Graph, diff: ColoringDifference) -> String {
    let name = |e| EdgeColoring::edge_name(g, e);
    match diff {
        ColoringDifference::Coverage { edge } => {
            format!(
                "edge {} is colored by exactly one of computed and oracle",
                name(edge)
            )
        }
        ColoringDifference::Pair {
            e,
            f,
            together_in_first,
        } => {
            let (yes, no) = if together_in_first {
                ("computed", "oracle")
            } else {
                ("oracle", "computed")
            };
            format!(
                "edges {} and {} share a class in {yes} but not in {no}",
                name(e),
                name(f)
            )
        }
    }
}

fn family(spec: &str) -> Result<Graph> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<u64> = params
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad parameters in `{spec}`"))?;
    let want = |k: usize| -> Result<()> {
        if nums.len() != k {
            bail!("`{name}` takes {k} parameter(s), got {}", nums.len());
        }
        Ok(())
    };
    let at_least = |x: u64, min: u64| -> Result<usize> {
        if x < min {
            bail!("`{spec}`: parameter {x} below minimum {min}");
        }
        Ok(x as usize)
    };
    Ok(match name {
        "path" => {
            want(1)?;
            generate::path(at_least(nums[0], 1)?)
        }
        "cycle" => {
            want(1)?;
            generate::cycle(at_least(nums[0], 3)?)
        }
        "star" => {
            want(1)?;
            generate::star(at_least(nums[0], 1)?)
        }
        "complete" => {
            want(1)?;
            generate::complete(at_least(nums[0], 1)?)
        }
        "bipartite" => {
            want(2)?;
            generate::complete_bipartite(at_least(nums[0], 1)?, at_least(nums[1], 1)?)
        }
        "grid" => {
            want(2)?;
            generate::grid(at_least(nums[0], 1)?, at_least(nums[1], 1)?)
        }
        "hypercube" => {
            want(1)?;
            if nums[0] > 20 {
                bail!("hypercube dimension {} too large", nums[0]);
            }
            generate::hypercube(nums[0] as u32)
        }
        "prism" => {
            want(1)?;
            generate::prism(at_least(nums[0], 3)?)
        }
        "mobius" => {
            want(1)?;
            generate::mobius_ladder(at_least(nums[0], 2)?)
        }
        "random" => {
            want(3)?;
            let mut rng = rand::rngs::StdRng::seed_from_u64(nums[2]);
            generate::random_connected(at_least(nums[0], 1)?, nums[1] as usize, &mut rng)
        }
        other => bail!("unknown graph family `{other}`"),
    })
}

fn generate_command(args: &GenerateArgs) -> Result<()> {
    let mut g = family(&args.family)?;
    for spec in &args.times {
        g = cartesian_product(&g, &family(spec)?).graph;
    }
    let mut out = String::new();
    if g.edge_count() == 0 {
        bail!(
            "`{}` has no edges and cannot be written as an edge list",
            args.family
        );
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    print!("{out}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_names_the_first_differing_pair() {
        let g = parse_graph("0 1\n1 2\n2 3\n3 0").unwrap();
        let computed = compute_delta_star(&g, 0).unwrap().coloring;
        let single = EdgeColoring::from_keys(&[Some(0); 4]);
        let diff = computed.first_difference(&single).unwrap();
        assert_eq!(
            describe(&g, diff),
            "edges 0-1 and 1-2 share a class in oracle but not in computed"
        );
        let uncolored = EdgeColoring::uncolored(4);
        let diff = computed.first_difference(&uncolored).unwrap();
        assert!(describe(&g, diff).starts_with("edge 0-1 is colored"));
    }

    #[test]
    fn family_specs() {
        assert_eq!(family("grid:3,4").unwrap().edge_count(), 17);
        assert_eq!(family("hypercube:3").unwrap().edge_count(), 12);
        assert!(family("grid:3").is_err());
        assert!(family("torus:3").is_err());
        assert!(family("cycle:2").is_err());
    }
}
