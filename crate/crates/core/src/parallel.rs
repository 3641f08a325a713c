//! δ* over a caller-supplied decomposition of the vertex set.
//!
//! Phase 1 computes the global coloring of every block independently on a
//! worker pool. Each block writes its colors into its own per-edge slot
//! vector, so no slot is ever written by two workers. Phase 2 runs after all
//! blocks finished: a single color graph spans the color ranges of all
//! blocks and every edge colored by more than one block has its colors
//! merged.

use std::collections::VecDeque;

use thiserror::Error;

use crate::color_graph::{ColorGraph, MergeCost};
use crate::coloring::EdgeColoring;
use crate::global::{run_treated_set, GlobalColoringResult, GlobalError, RunStats};
use crate::graph::{parse_vertex_lines, EdgeId, Graph, GraphError, VertexId};
use crate::psp::PspStats;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {vertex} appears in more than one block")]
    Overlap { vertex: VertexId },
    #[error("vertex {vertex} is not covered by any block")]
    NotCovering { vertex: VertexId },
    #[error("block {block} does not induce a connected subgraph")]
    BlockDisconnected { block: usize },
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParallelError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("block {block}: {source}")]
    Block { block: usize, source: GlobalError },
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

/// Disjoint blocks covering the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<VertexId>>) -> Self {
        Partition { blocks }
    }

    /// Trivial partition with one block holding every vertex.
    pub fn single(g: &Graph) -> Self {
        Partition {
            blocks: vec![(0..g.vertex_count()).collect()],
        }
    }

    /// Block index of every vertex; assumes a validated partition.
    pub fn owners(&self, n: usize) -> Vec<usize> {
        let mut owner = vec![usize::MAX; n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                owner[v] = i;
            }
        }
        owner
    }
}

/// Partition file: one block per line, whitespace-separated original vertex
/// ids, `#` comments.
pub fn parse_partition(g: &Graph, text: &str) -> Result<Partition, GraphError> {
    parse_vertex_lines(g, text).map(Partition::new)
}

pub fn validate_partition(g: &Graph, p: &Partition) -> Result<(), PartitionError> {
    let n = g.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, block) in p.blocks.iter().enumerate() {
        for &v in block {
            if v >= n {
                return Err(PartitionError::VertexOutOfRange { vertex: v, n });
            }
            if owner[v].is_some() {
                return Err(PartitionError::Overlap { vertex: v });
            }
            owner[v] = Some(i);
        }
    }
    if let Some(vertex) = owner.iter().position(|o| o.is_none()) {
        return Err(PartitionError::NotCovering { vertex });
    }
    for (i, block) in p.blocks.iter().enumerate() {
        if !g.induces_connected(block) {
            return Err(PartitionError::BlockDisconnected { block: i });
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct BlockRun {
    /// Per-edge color (component id in the block's color graph).
    slots: Vec<Option<u32>>,
    colors: usize,
    /// Treated edges with an endpoint outside the block.
    boundary_stack: Vec<EdgeId>,
    stats: RunStats,
}

fn run_block(g: &Graph, block: &[VertexId], in_block: &[bool]) -> Result<BlockRun, GlobalError> {
    let root = *block.iter().min().expect("validated blocks are nonempty");
    let mut on_stack = vec![false; g.edge_count()];
    let mut boundary_stack = Vec::new();
    let (state, _, psp) = run_treated_set(g, block, root, |_, ctx| {
        ctx.for_each_psp_edge(g, |e| {
            let (a, b) = g.endpoints(e);
            if (!in_block[a] || !in_block[b]) && !on_stack[e] {
                on_stack[e] = true;
                boundary_stack.push(e);
            }
        });
    })?;
    let slots = (0..g.edge_count())
        .map(|e| state.color_of(e).map(|c| c as u32))
        .collect();
    Ok(BlockRun {
        slots,
        colors: state.global_colors().len(),
        boundary_stack,
        stats: RunStats {
            psp,
            global_merge: state.global_colors().merge_cost(),
            fresh_colors: state.fresh_colors(),
        },
    })
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParallelStats {
    pub blocks: usize,
    pub workers: usize,
    /// Edges colored by two or more blocks.
    pub multi_colored_edges: usize,
    /// Distinct edges across all boundary stacks.
    pub boundary_stack_edges: usize,
    /// Whether merging only the boundary-stack edges yields the same
    /// partition as merging every multi-colored edge.
    pub boundary_stacks_sufficient: bool,
    pub merge: MergeCost,
    pub block_runs: Vec<RunStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelResult {
    pub result: GlobalColoringResult,
    pub stats: ParallelStats,
}

/// δ* computed block-wise on `workers` threads and merged across blocks.
pub fn compute_delta_star_parallel(
    g: &Graph,
    p: &Partition,
    workers: usize,
) -> Result<ParallelResult, ParallelError> {
    validate_partition(g, p)?;
    if workers == 0 {
        return Err(ParallelError::NoWorkers);
    }
    let owners = p.owners(g.vertex_count());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ParallelError::Pool(e.to_string()))?;
    let runs: Vec<Result<BlockRun, GlobalError>> = pool.install(|| {
        use rayon::prelude::*;
        p.blocks
            .par_iter()
            .enumerate()
            .map(|(i, block)| {
                let in_block: Vec<bool> = owners.iter().map(|&o| o == i).collect();
                run_block(g, block, &in_block)
            })
            .collect()
    });
    let runs: Vec<BlockRun> = runs
        .into_iter()
        .enumerate()
        .map(|(block, r)| r.map_err(|source| ParallelError::Block { block, source }))
        .collect::<Result<_, _>>()?;

    // Phase 2.
    let mut offsets = Vec::with_capacity(runs.len());
    let mut total = 0usize;
    for run in &runs {
        offsets.push(total);
        total += run.colors;
    }
    let unified_slots = |e: EdgeId| {
        runs.iter()
            .zip(&offsets)
            .filter_map(move |(run, &off)| run.slots[e].map(|c| off + c as usize))
    };
    let merge_edge = |cg: &mut ColorGraph, e: EdgeId| -> bool {
        let mut colors = unified_slots(e);
        let Some(first) = colors.next() else {
            return false;
        };
        let mut multi = false;
        for c in colors {
            multi = true;
            cg.merge(first, c);
        }
        multi
    };

    let m = g.edge_count();
    let mut unified = ColorGraph::new(total);
    let mut multi_colored_edges = 0;
    for e in 0..m {
        if merge_edge(&mut unified, e) {
            multi_colored_edges += 1;
        }
    }
    let keys: Vec<Option<usize>> = (0..m)
        .map(|e| unified_slots(e).next().map(|c| unified.component_of(c)))
        .collect();
    let coloring = EdgeColoring::from_keys(&keys);

    let mut boundary_only = ColorGraph::new(total);
    let mut on_stack = vec![false; m];
    for run in &runs {
        for &e in &run.boundary_stack {
            if !on_stack[e] {
                on_stack[e] = true;
                merge_edge(&mut boundary_only, e);
            }
        }
    }
    let boundary_keys: Vec<Option<usize>> = (0..m)
        .map(|e| {
            unified_slots(e)
                .next()
                .map(|c| boundary_only.component_of(c))
        })
        .collect();
    let boundary_stacks_sufficient = EdgeColoring::from_keys(&boundary_keys) == coloring;

    let mut psp = PspStats::default();
    let mut fresh_colors = 0;
    for run in &runs {
        psp.absorb(&run.stats.psp);
        fresh_colors += run.stats.fresh_colors;
    }
    let treated: Vec<VertexId> = p.blocks.iter().flatten().copied().collect();
    let result = GlobalColoringResult {
        class_count: coloring.class_count(),
        covered_edges: coloring.covered_edges(),
        coloring,
        treated,
        stats: RunStats {
            psp,
            global_merge: unified.merge_cost(),
            fresh_colors,
        },
    };
    let stats = ParallelStats {
        blocks: p.blocks.len(),
        workers,
        multi_colored_edges,
        boundary_stack_edges: on_stack.iter().filter(|&&b| b).count(),
        boundary_stacks_sufficient,
        merge: unified.merge_cost(),
        block_runs: runs.into_iter().map(|r| r.stats).collect(),
    };
    Ok(ParallelResult { result, stats })
}

/// Edges whose endpoints both lie within distance 2 of an endpoint of a
/// cross-block edge. Only such edges can be colored by two blocks: a PSP
/// edge has an endpoint adjacent to its center, so an edge shared by PSPs
/// of two blocks lies on a path of length at most 3 between them.
pub fn near_boundary_edge_count(g: &Graph, p: &Partition) -> usize {
    let n = g.vertex_count();
    let owner = p.owners(n);
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &(a, b) in g.edges() {
        if owner[a] != owner[b] {
            for x in [a, b] {
                if dist[x] == usize::MAX {
                    dist[x] = 0;
                    queue.push_back(x);
                }
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == 2 {
            continue;
        }
        for &(u, _) in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    g.edges()
        .iter()
        .filter(|&&(a, b)| dist[a] <= 2 && dist[b] <= 2)
        .count()
}
