//! Global colorings over a treated vertex set, δ* and quasi product
//! classification.

use thiserror::Error;

use crate::color_graph::MergeCost;
use crate::coloring::EdgeColoring;
use crate::graph::{Graph, VertexId};
use crate::psp::{GlobalColoringState, PspContext, PspError, PspStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlobalError {
    #[error("root {root} is not in the treated set")]
    RootNotInW { root: VertexId },
    #[error("treated set does not induce a connected subgraph")]
    DisconnectedW,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error(transparent)]
    Psp(#[from] PspError),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub psp: PspStats,
    pub global_merge: MergeCost,
    /// New global colors created for unmapped local colors.
    pub fresh_colors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalColoringResult {
    /// Canonical classes over the edges of all treated PSPs; other edges are
    /// uncolored.
    pub coloring: EdgeColoring,
    /// Treated centers in processing order.
    pub treated: Vec<VertexId>,
    pub class_count: usize,
    pub covered_edges: usize,
    pub stats: RunStats,
}

impl GlobalColoringResult {
    fn from_state(state: &GlobalColoringState, treated: Vec<VertexId>, psp: PspStats) -> Self {
        let coloring = state.coloring();
        GlobalColoringResult {
            class_count: coloring.class_count(),
            covered_edges: coloring.covered_edges(),
            coloring,
            treated,
            stats: RunStats {
                psp,
                global_merge: state.global_colors().merge_cost(),
                fresh_colors: state.fresh_colors(),
            },
        }
    }
}

/// Treats the vertices of `w` in BFS order of the induced subgraph from `v0`,
/// calling `after_psp` once each PSP has been merged.
pub(crate) fn run_treated_set<F>(
    g: &Graph,
    w: &[VertexId],
    v0: VertexId,
    mut after_psp: F,
) -> Result<(GlobalColoringState, Vec<VertexId>, PspStats), GlobalError>
where
    F: FnMut(VertexId, &PspContext),
{
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in w {
        if v >= n {
            return Err(GlobalError::VertexOutOfRange { vertex: v, n });
        }
        inside[v] = true;
    }
    if v0 >= n {
        return Err(GlobalError::VertexOutOfRange { vertex: v0, n });
    }
    if !inside[v0] {
        return Err(GlobalError::RootNotInW { root: v0 });
    }
    let order = g.bfs_order_within(v0, |v| inside[v]).sequence;
    if order.len() != inside.iter().filter(|&&b| b).count() {
        return Err(GlobalError::DisconnectedW);
    }

    let mut state = GlobalColoringState::seeded(g, v0);
    let mut ctx = PspContext::new(g);
    for &c in &order {
        ctx.recognize(g, c, &mut state)?;
        after_psp(c, &ctx);
    }
    let stats = *ctx.stats();
    Ok((state, order, stats))
}

/// Global coloring of the PSPs centered in `w`, which must induce a connected
/// subgraph containing `v0`.
pub fn compute_global_coloring(
    g: &Graph,
    w: &[VertexId],
    v0: VertexId,
) -> Result<GlobalColoringResult, GlobalError> {
    let (state, order, stats) = run_treated_set(g, w, v0, |_, _| {})?;
    Ok(GlobalColoringResult::from_state(&state, order, stats))
}

/// δ* of `g`: the global coloring with every vertex treated.
pub fn compute_delta_star(g: &Graph, v0: VertexId) -> Result<GlobalColoringResult, GlobalError> {
    let all: Vec<VertexId> = (0..g.vertex_count()).collect();
    compute_global_coloring(g, &all, v0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiProductReport {
    pub is_quasi_product: bool,
    pub delta_star_classes: usize,
    /// Edge count of each class, ordered by class label.
    pub class_sizes: Vec<usize>,
}

impl QuasiProductReport {
    pub fn from_coloring(coloring: &EdgeColoring) -> Self {
        let class_sizes = coloring.class_sizes();
        QuasiProductReport {
            is_quasi_product: class_sizes.len() >= 2,
            delta_star_classes: class_sizes.len(),
            class_sizes,
        }
    }
}

/// A graph is a quasi Cartesian product iff δ* has at least two classes.
pub fn classify_quasi_product(g: &Graph) -> QuasiProductReport {
    let result = compute_delta_star(g, 0).expect("vertex 0 exists in a nonempty connected graph");
    QuasiProductReport::from_coloring(&result.coloring)
}
