//! Recognition of the partial star product (PSP) at a center and merging of
//! its local coloring into a running global coloring.
//!
//! For a center `c` the neighbors-of-neighbors scan records two relations on
//! pairs of primal edges (edges at `c`):
//!
//! * the *incidence* relation: the pair was seen spanning a square whose top
//!   vertex had exactly these two primal neighbors at the time;
//! * the *absence* relation: the pair cannot span a unique chordless square
//!   with a unique top vertex (a triangle, a second square, or a top vertex
//!   with three or more primal neighbors).
//!
//! Two primal edges get the same local color iff they are connected by pairs
//! that are absent or not incident. Non-primal edges are the two far edges of
//! every stacked top vertex whose primal edges ended up in different local
//! colors; each takes the local color of its opposite primal edge.
//!
//! All per-vertex scratch attributes are stamped with a per-run epoch so a
//! new center never has to clear them; only the `deg(c) x deg(c)` window of
//! the two pair matrices is zeroed.

use thiserror::Error;

use crate::color_graph::{ColorGraph, MergeCost};
use crate::coloring::EdgeColoring;
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PspError {
    #[error("center {center} is neither the root nor adjacent to a treated vertex")]
    NotAdjacentToTreatedSet { center: VertexId },
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
}

/// Symmetric boolean matrix over primal-edge labels, allocated once at
/// `stride x stride` and used through a `d x d` window.
#[derive(Debug, Clone)]
pub struct PairMatrix {
    stride: usize,
    data: Vec<bool>,
}

impl PairMatrix {
    pub fn new(stride: usize) -> Self {
        PairMatrix {
            stride,
            data: vec![false; stride * stride],
        }
    }

    /// `d x d` matrix holding exactly `pairs`.
    pub fn with_pairs(d: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = PairMatrix::new(d);
        for &(i, j) in pairs {
            m.set(i, j);
        }
        m
    }

    fn clear_window(&mut self, d: usize) {
        if d == 0 {
            return;
        }
        for row in self.data.chunks_mut(self.stride).take(d) {
            row[..d].fill(false);
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.stride + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j] = true;
        self.data[j * self.stride + i] = true;
    }

    fn pairs(&self, d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Local classes of the `d` primal edges: `i` and `j` are joined whenever the
/// pair is in the absence list or missing from the incidence list.
pub fn local_classes_from_lists(
    incidence: &PairMatrix,
    absence: &PairMatrix,
    d: usize,
) -> ColorGraph {
    let mut cg = ColorGraph::new(d);
    merge_local_classes(incidence, absence, d, &mut cg);
    cg
}

fn merge_local_classes(
    incidence: &PairMatrix,
    absence: &PairMatrix,
    d: usize,
    cg: &mut ColorGraph,
) {
    for i in 0..d {
        for j in i + 1..d {
            if absence.get(i, j) || !incidence.get(i, j) {
                cg.merge(i, j);
            }
        }
    }
}

/// Temporary global colors of the edges of the PSPs treated so far.
#[derive(Debug, Clone)]
pub struct GlobalColoringState {
    temp_color_of_edge: Vec<Option<u32>>,
    global_colors: ColorGraph,
    treated: Vec<bool>,
    root: VertexId,
    fresh_colors: usize,
}

impl GlobalColoringState {
    /// Pairwise different temporary global colors on the edges at `root`.
    pub fn seeded(g: &Graph, root: VertexId) -> Self {
        assert!(root < g.vertex_count(), "root {root} out of range");
        let mut temp_color_of_edge = vec![None; g.edge_count()];
        for (i, &(_, e)) in g.neighbors(root).iter().enumerate() {
            temp_color_of_edge[e] = Some(i as u32);
        }
        GlobalColoringState {
            temp_color_of_edge,
            global_colors: ColorGraph::new(g.degree(root)),
            treated: vec![false; g.vertex_count()],
            root,
            fresh_colors: 0,
        }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn is_treated(&self, v: VertexId) -> bool {
        self.treated[v]
    }

    /// Current color (component of the global color graph) of `e`.
    pub fn color_of(&self, e: EdgeId) -> Option<usize> {
        self.temp_color_of_edge[e].map(|d| self.global_colors.component_of(d as usize))
    }

    pub fn coloring(&self) -> EdgeColoring {
        let keys: Vec<Option<usize>> = (0..self.temp_color_of_edge.len())
            .map(|e| self.color_of(e))
            .collect();
        EdgeColoring::from_keys(&keys)
    }

    pub fn global_colors(&self) -> &ColorGraph {
        &self.global_colors
    }

    /// Times a local color had no global color to map to and a new one was
    /// created. Stays zero whenever the treated set is kept connected.
    pub fn fresh_colors(&self) -> usize {
        self.fresh_colors
    }

    fn map_or_merge(&mut self, slot: &mut Option<u32>, d1: u32) {
        match *slot {
            Some(d2) => {
                self.global_colors.merge(d1 as usize, d2 as usize);
            }
            None => *slot = Some(d1),
        }
    }

    fn color_for(&mut self, slot: &mut Option<u32>) -> u32 {
        match *slot {
            Some(d) => d,
            None => {
                let d = self.global_colors.push_color() as u32;
                self.fresh_colors += 1;
                *slot = Some(d);
                d
            }
        }
    }
}

/// Counters accumulated over all centers handled by one context.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PspStats {
    pub centers: usize,
    /// Adjacency entries examined by the neighbors-of-neighbors scan.
    pub scan_touches: u64,
    /// Sum over centers of `deg(c) * Δ`.
    pub scan_bound: u64,
    /// Centers whose scan exceeded `deg(c) * Δ`.
    pub scan_bound_violations: usize,
    pub stack_pushes: u64,
    /// Local color graphs whose relabeling exceeded `k log2 k`.
    pub local_merge_violations: usize,
    pub worst_local_merge: MergeCost,
}

impl PspStats {
    pub fn absorb(&mut self, other: &PspStats) {
        self.centers += other.centers;
        self.scan_touches += other.scan_touches;
        self.scan_bound += other.scan_bound;
        self.scan_bound_violations += other.scan_bound_violations;
        self.stack_pushes += other.stack_pushes;
        self.local_merge_violations += other.local_merge_violations;
        if other.worst_local_merge.relabels > self.worst_local_merge.relabels {
            self.worst_local_merge = other.worst_local_merge;
        }
    }
}

/// One edge of a recognized PSP.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PspEdge {
    pub edge: EdgeId,
    pub primal: bool,
    /// Local color: component of the local color graph.
    pub local_color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psp {
    pub center: VertexId,
    pub edges: Vec<PspEdge>,
}

impl Psp {
    pub fn primal_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().filter(|e| e.primal).map(|e| e.edge)
    }

    pub fn non_primal_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().filter(|e| !e.primal).map(|e| e.edge)
    }

    /// Local coloring as a canonical partition of the PSP edges of a graph
    /// with `m` edges.
    pub fn local_coloring(&self, m: usize) -> EdgeColoring {
        let mut keys = vec![None; m];
        for e in &self.edges {
            keys[e.edge] = Some(e.local_color);
        }
        EdgeColoring::from_keys(&keys)
    }
}

const NONE: usize = usize::MAX;

/// Scratch state for PSP recognition on one graph. Reusable across centers
/// and across runs on the same graph.
#[derive(Debug, Clone)]
pub struct PspContext {
    n: usize,
    max_degree: usize,
    epoch: u32,
    center: usize,
    temp_label: Vec<u32>,
    visited: Vec<u32>,
    primal: Vec<u32>,
    primal_neighbors: Vec<u8>,
    first_primal_neighbor: Vec<VertexId>,
    second_primal_neighbor: Vec<VertexId>,
    first_edge: Vec<EdgeId>,
    second_edge: Vec<EdgeId>,
    incidence: PairMatrix,
    absence: PairMatrix,
    stack: Vec<VertexId>,
    local_colors: ColorGraph,
    map_local_color: Vec<Option<u32>>,
    stats: PspStats,
}

impl PspContext {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let delta = g.max_degree();
        PspContext {
            n,
            max_degree: delta,
            epoch: 0,
            center: NONE,
            temp_label: vec![0; n],
            visited: vec![0; n],
            primal: vec![0; n],
            primal_neighbors: vec![0; n],
            first_primal_neighbor: vec![NONE; n],
            second_primal_neighbor: vec![NONE; n],
            first_edge: vec![NONE; n],
            second_edge: vec![NONE; n],
            incidence: PairMatrix::new(delta),
            absence: PairMatrix::new(delta),
            stack: Vec::new(),
            local_colors: ColorGraph::new(0),
            map_local_color: vec![None; delta],
            stats: PspStats::default(),
        }
    }

    pub fn stats(&self) -> &PspStats {
        &self.stats
    }

    fn next_epoch(&mut self) {
        if self.epoch == u32::MAX {
            self.visited.fill(0);
            self.primal.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    /// Recognizes the PSP at `c` and merges its local coloring into `state`.
    ///
    /// `c` must be the seeded root of `state` or adjacent to a treated
    /// vertex, which keeps the treated set connected.
    pub fn recognize(
        &mut self,
        g: &Graph,
        c: VertexId,
        state: &mut GlobalColoringState,
    ) -> Result<(), PspError> {
        if c >= self.n {
            return Err(PspError::VertexOutOfRange {
                vertex: c,
                n: self.n,
            });
        }
        if c != state.root && !g.neighbors(c).iter().any(|&(u, _)| state.treated[u]) {
            return Err(PspError::NotAdjacentToTreatedSet { center: c });
        }

        // Initialization.
        self.next_epoch();
        let epoch = self.epoch;
        self.center = c;
        let primal_edges = g.neighbors(c);
        let d = primal_edges.len();
        for (i, &(u, _)) in primal_edges.iter().enumerate() {
            self.temp_label[u] = i as u32;
            self.primal[u] = epoch;
        }
        self.incidence.clear_window(d);
        self.absence.clear_window(d);
        self.stack.clear();

        // Scan the neighbors of every primal vertex.
        let mut touches = 0u64;
        for &(u, _) in primal_edges {
            let lu = self.temp_label[u] as usize;
            for &(w, e_uw) in g.neighbors(u) {
                touches += 1;
                if w == c {
                    continue;
                }
                if self.primal[w] == epoch {
                    self.absence.set(lu, self.temp_label[w] as usize);
                } else if self.visited[w] != epoch {
                    self.visited[w] = epoch;
                    self.primal_neighbors[w] = 1;
                    self.first_primal_neighbor[w] = u;
                    self.first_edge[w] = e_uw;
                } else if self.primal_neighbors[w] == 1 {
                    self.primal_neighbors[w] = 2;
                    self.second_primal_neighbor[w] = u;
                    self.second_edge[w] = e_uw;
                    let lv = self.temp_label[self.first_primal_neighbor[w]] as usize;
                    if !self.incidence.get(lu, lv) {
                        self.incidence.set(lu, lv);
                        self.stack.push(w);
                    } else {
                        // a second square on the same pair
                        self.absence.set(lu, lv);
                    }
                } else {
                    let l1 = self.temp_label[self.first_primal_neighbor[w]] as usize;
                    let l2 = self.temp_label[self.second_primal_neighbor[w]] as usize;
                    self.absence.set(l1, l2);
                    self.absence.set(l1, lu);
                    self.absence.set(l2, lu);
                    self.primal_neighbors[w] = self.primal_neighbors[w].saturating_add(1);
                }
            }
        }

        // Local colors of primal edges.
        self.local_colors.reset(d);
        merge_local_classes(&self.incidence, &self.absence, d, &mut self.local_colors);
        let cost = self.local_colors.merge_cost();
        if !cost.within_bound() {
            self.stats.local_merge_violations += 1;
        }
        if cost.relabels > self.stats.worst_local_merge.relabels {
            self.stats.worst_local_merge = cost;
        }

        // Map local colors to the global colors already on primal edges.
        self.map_local_color[..d].fill(None);
        for (i, &(_, e)) in primal_edges.iter().enumerate() {
            if let Some(d1) = state.temp_color_of_edge[e] {
                let b = self.local_colors.component_of(i);
                let mut slot = self.map_local_color[b];
                state.map_or_merge(&mut slot, d1);
                self.map_local_color[b] = slot;
            }
        }

        // Same for the non-primal edges of stacked top vertices. The edge
        // from `v` to its first primal neighbor is opposite the second
        // primal edge, and vice versa.
        for &v in &self.stack {
            let Some((b1, b2)) = self.split_colors(v) else {
                continue;
            };
            if let Some(d1) = state.temp_color_of_edge[self.first_edge[v]] {
                let mut slot = self.map_local_color[b2];
                state.map_or_merge(&mut slot, d1);
                self.map_local_color[b2] = slot;
            }
            if let Some(d1) = state.temp_color_of_edge[self.second_edge[v]] {
                let mut slot = self.map_local_color[b1];
                state.map_or_merge(&mut slot, d1);
                self.map_local_color[b1] = slot;
            }
        }

        // Color the remaining PSP edges.
        for (i, &(_, e)) in primal_edges.iter().enumerate() {
            if state.temp_color_of_edge[e].is_none() {
                let b = self.local_colors.component_of(i);
                let mut slot = self.map_local_color[b];
                state.temp_color_of_edge[e] = Some(state.color_for(&mut slot));
                self.map_local_color[b] = slot;
            }
        }
        for k in 0..self.stack.len() {
            let v = self.stack[k];
            let Some((b1, b2)) = self.split_colors(v) else {
                continue;
            };
            for (e, b) in [(self.first_edge[v], b2), (self.second_edge[v], b1)] {
                if state.temp_color_of_edge[e].is_none() {
                    let mut slot = self.map_local_color[b];
                    state.temp_color_of_edge[e] = Some(state.color_for(&mut slot));
                    self.map_local_color[b] = slot;
                }
            }
        }
        state.treated[c] = true;

        let bound = (d * self.max_degree) as u64;
        self.stats.centers += 1;
        self.stats.scan_touches += touches;
        self.stats.scan_bound += bound;
        if touches > bound {
            self.stats.scan_bound_violations += 1;
        }
        self.stats.stack_pushes += self.stack.len() as u64;
        Ok(())
    }

    /// Local colors of the two primal edges leading to stacked vertex `v`,
    /// if they differ.
    fn split_colors(&self, v: VertexId) -> Option<(usize, usize)> {
        let b1 = self
            .local_colors
            .component_of(self.temp_label[self.first_primal_neighbor[v]] as usize);
        let b2 = self
            .local_colors
            .component_of(self.temp_label[self.second_primal_neighbor[v]] as usize);
        (b1 != b2).then_some((b1, b2))
    }

    /// Calls `f` on every edge of the most recently recognized PSP.
    pub fn for_each_psp_edge<F: FnMut(EdgeId)>(&self, g: &Graph, mut f: F) {
        if self.center == NONE {
            return;
        }
        for &(_, e) in g.neighbors(self.center) {
            f(e);
        }
        for &v in &self.stack {
            if self.split_colors(v).is_some() {
                f(self.first_edge[v]);
                f(self.second_edge[v]);
            }
        }
    }

    /// The most recently recognized PSP with its local coloring.
    pub fn psp(&self, g: &Graph) -> Psp {
        assert!(self.center != NONE, "no PSP recognized yet");
        let c = self.center;
        let mut edges: Vec<PspEdge> = g
            .neighbors(c)
            .iter()
            .enumerate()
            .map(|(i, &(_, e))| PspEdge {
                edge: e,
                primal: true,
                local_color: self.local_colors.component_of(i),
            })
            .collect();
        for &v in &self.stack {
            if let Some((b1, b2)) = self.split_colors(v) {
                edges.push(PspEdge {
                    edge: self.first_edge[v],
                    primal: false,
                    local_color: b2,
                });
                edges.push(PspEdge {
                    edge: self.second_edge[v],
                    primal: false,
                    local_color: b1,
                });
            }
        }
        edges.sort_by_key(|e| e.edge);
        Psp { center: c, edges }
    }

    /// Primal-edge pairs recorded in the incidence list for the last center.
    pub fn incidence_pairs(&self, g: &Graph) -> Vec<(EdgeId, EdgeId)> {
        self.edge_pairs(g, &self.incidence)
    }

    /// Primal-edge pairs recorded in the absence list for the last center.
    pub fn absence_pairs(&self, g: &Graph) -> Vec<(EdgeId, EdgeId)> {
        self.edge_pairs(g, &self.absence)
    }

    fn edge_pairs(&self, g: &Graph, m: &PairMatrix) -> Vec<(EdgeId, EdgeId)> {
        assert!(self.center != NONE, "no PSP recognized yet");
        let primal = g.neighbors(self.center);
        m.pairs(primal.len())
            .into_iter()
            .map(|(i, j)| (primal[i].1, primal[j].1))
            .collect()
    }
}

/// One-shot PSP recognition at `c`: builds a fresh context, updates `state`
/// and returns the recognized PSP.
pub fn recognize_psp(
    g: &Graph,
    c: VertexId,
    state: &mut GlobalColoringState,
) -> Result<Psp, PspError> {
    let mut ctx = PspContext::new(g);
    ctx.recognize(g, c, state)?;
    Ok(ctx.psp(g))
}
