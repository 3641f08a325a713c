//! Brute-force reference implementations built directly from the definitions
//! of the relations involved. Nothing here shares code with the fast path
//! beyond the graph's edge list and the canonical [`EdgeColoring`] form.
//!
//! Everything is quadratic or worse in the number of edges and meant for
//! small graphs only.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("vertex set does not induce a connected subgraph")]
    DisconnectedW,
}

/// How adjacent edges `vu`, `vw` are judged to span a unique square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SquareRule {
    /// Exactly one vertex `x != v` adjacent to both `u` and `w`.
    #[default]
    SingleTop,
    /// As [`SquareRule::SingleTop`], and additionally `|N(x) ∩ N(v)| = 2`.
    SingleUniqueTop,
}

/// A reflexive, symmetric relation on edges. Only off-diagonal pairs with
/// `e < f` are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePairRelation {
    pub edge_count: usize,
    pub pairs: BTreeSet<(EdgeId, EdgeId)>,
}

impl EdgePairRelation {
    fn new(edge_count: usize) -> Self {
        EdgePairRelation {
            edge_count,
            pairs: BTreeSet::new(),
        }
    }

    fn insert(&mut self, e: EdgeId, f: EdgeId) {
        if e != f {
            self.pairs.insert((e.min(f), e.max(f)));
        }
    }

    pub fn contains(&self, e: EdgeId, f: EdgeId) -> bool {
        e == f || self.pairs.contains(&(e.min(f), e.max(f)))
    }
}

/// Dense adjacency matrix; the oracle's own view of the graph.
struct Adjacency {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    matrix: Vec<bool>,
}

impl Adjacency {
    fn of(g: &Graph) -> Self {
        let n = g.vertex_count();
        let edges = g.edges().to_vec();
        let mut matrix = vec![false; n * n];
        for &(u, v) in &edges {
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        Adjacency { n, edges, matrix }
    }

    fn adj(&self, u: VertexId, v: VertexId) -> bool {
        self.matrix[u * self.n + v]
    }

    fn common(&self, u: VertexId, w: VertexId) -> Vec<VertexId> {
        (0..self.n)
            .filter(|&x| self.adj(u, x) && self.adj(w, x))
            .collect()
    }

    fn shared_vertex(&self, e: EdgeId, f: EdgeId) -> Option<(VertexId, VertexId, VertexId)> {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        if a == c {
            Some((a, b, d))
        } else if a == d {
            Some((a, b, c))
        } else if b == c {
            Some((b, a, d))
        } else if b == d {
            Some((b, a, c))
        } else {
            None
        }
    }

    /// Is `p q r s` (closing back to `p`) an induced 4-cycle?
    fn chordless_square(&self, p: VertexId, q: VertexId, r: VertexId, s: VertexId) -> bool {
        self.adj(p, q)
            && self.adj(q, r)
            && self.adj(r, s)
            && self.adj(s, p)
            && !self.adj(p, r)
            && !self.adj(q, s)
    }

    /// Top vertices of the squares spanned by `vu` and `vw`.
    fn tops(&self, v: VertexId, u: VertexId, w: VertexId) -> Vec<VertexId> {
        self.common(u, w).into_iter().filter(|&x| x != v).collect()
    }

    /// Do the adjacent edges `vu`, `vw` span a unique chordless square?
    fn unique_chordless_square(
        &self,
        v: VertexId,
        u: VertexId,
        w: VertexId,
        rule: SquareRule,
    ) -> bool {
        let tops = self.tops(v, u, w);
        if tops.len() != 1 {
            return false;
        }
        let x = tops[0];
        if !self.chordless_square(v, u, x, w) {
            return false;
        }
        match rule {
            SquareRule::SingleTop => true,
            SquareRule::SingleUniqueTop => self.common(x, v).len() == 2,
        }
    }

    fn delta(&self, e: EdgeId, f: EdgeId, rule: SquareRule) -> bool {
        if e == f {
            return true;
        }
        if let Some((v, u, w)) = self.shared_vertex(e, f) {
            return !self.unique_chordless_square(v, u, w, rule);
        }
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        self.chordless_square(a, b, d, c) || self.chordless_square(a, b, c, d)
    }
}

/// The relation δ: adjacent edges not spanning a unique chordless square,
/// opposite edges of a chordless square, and equal edges.
pub fn oracle_delta(g: &Graph) -> EdgePairRelation {
    oracle_delta_with(g, SquareRule::SingleTop)
}

pub fn oracle_delta_with(g: &Graph, rule: SquareRule) -> EdgePairRelation {
    let adj = Adjacency::of(g);
    let m = g.edge_count();
    let mut rel = EdgePairRelation::new(m);
    for e in 0..m {
        for f in e + 1..m {
            if adj.delta(e, f, rule) {
                rel.insert(e, f);
            }
        }
    }
    rel
}

/// Connected components of the relation graph over all `m` edges.
pub fn transitive_closure(r: &EdgePairRelation) -> EdgeColoring {
    closure_over(r, |_| true)
}

fn closure_over<F: Fn(EdgeId) -> bool>(r: &EdgePairRelation, member: F) -> EdgeColoring {
    let m = r.edge_count;
    let mut neighbors = vec![Vec::new(); m];
    for &(e, f) in &r.pairs {
        neighbors[e].push(f);
        neighbors[f].push(e);
    }
    let mut component: Vec<Option<usize>> = vec![None; m];
    for start in 0..m {
        if component[start].is_some() || !member(start) {
            continue;
        }
        component[start] = Some(start);
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            for &f in &neighbors[e] {
                if component[f].is_none() {
                    component[f] = Some(start);
                    stack.push(f);
                }
            }
        }
    }
    EdgeColoring::from_keys(&component)
}

/// Pairs of δ with at least one member incident to `v`.
pub fn oracle_d_v(g: &Graph, v: VertexId) -> EdgePairRelation {
    d_v_from(g, &oracle_delta(g), v)
}

fn d_v_from(g: &Graph, delta: &EdgePairRelation, v: VertexId) -> EdgePairRelation {
    let at_v = |e: EdgeId| {
        let (a, b) = g.endpoints(e);
        a == v || b == v
    };
    EdgePairRelation {
        edge_count: delta.edge_count,
        pairs: delta
            .pairs
            .iter()
            .copied()
            .filter(|&(e, f)| at_v(e) || at_v(f))
            .collect(),
    }
}

/// Partial star product by definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OraclePsp {
    pub center: VertexId,
    /// Edges at the center.
    pub primal: BTreeSet<EdgeId>,
    /// Opposite edges of chordless squares spanned by primal edges in
    /// different classes of the closed local relation.
    pub non_primal: BTreeSet<EdgeId>,
    /// Closure of `d_v` over the whole edge set.
    pub d_v_star: EdgeColoring,
}

impl OraclePsp {
    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.primal.union(&self.non_primal).copied().collect()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.primal.contains(&e) || self.non_primal.contains(&e)
    }

    pub fn vertices(&self, g: &Graph) -> BTreeSet<VertexId> {
        self.edges()
            .into_iter()
            .flat_map(|e| {
                let (a, b) = g.endpoints(e);
                [a, b]
            })
            .collect()
    }

    /// The local coloring: the closed local relation restricted to the PSP.
    pub fn local_coloring(&self) -> EdgeColoring {
        self.d_v_star.restricted(|e| self.contains(e))
    }
}

pub fn oracle_psp(g: &Graph, v: VertexId) -> OraclePsp {
    psp_from(g, &oracle_delta(g), v)
}

fn psp_from(g: &Graph, delta: &EdgePairRelation, v: VertexId) -> OraclePsp {
    let adj = Adjacency::of(g);
    let d_v_star = transitive_closure(&d_v_from(g, delta, v));
    let at_v: Vec<(EdgeId, VertexId)> = (0..g.edge_count())
        .filter_map(|e| {
            let (a, b) = g.endpoints(e);
            if a == v {
                Some((e, b))
            } else if b == v {
                Some((e, a))
            } else {
                None
            }
        })
        .collect();
    let primal: BTreeSet<EdgeId> = at_v.iter().map(|&(e, _)| e).collect();
    let mut non_primal = BTreeSet::new();
    for (i, &(e, u)) in at_v.iter().enumerate() {
        for &(f, w) in &at_v[i + 1..] {
            if d_v_star.same_class(e, f) {
                continue;
            }
            for x in adj.tops(v, u, w) {
                if adj.chordless_square(v, u, x, w) {
                    non_primal.insert(edge_id(g, u, x));
                    non_primal.insert(edge_id(g, w, x));
                }
            }
        }
    }
    OraclePsp {
        center: v,
        primal,
        non_primal,
        d_v_star,
    }
}

fn edge_id(g: &Graph, a: VertexId, b: VertexId) -> EdgeId {
    let key = (a.min(b), a.max(b));
    g.edges()
        .iter()
        .position(|&p| p == key)
        .expect("edge present")
}

pub fn oracle_local_coloring(g: &Graph, v: VertexId) -> EdgeColoring {
    oracle_psp(g, v).local_coloring()
}

/// Closure of the union of the local colorings of all centers in `w`.
pub fn oracle_global(g: &Graph, w: &[VertexId]) -> Result<EdgeColoring, OracleError> {
    if !oracle_connected(g, w) {
        return Err(OracleError::DisconnectedW);
    }
    let delta = oracle_delta(g);
    let m = g.edge_count();
    let mut union = EdgePairRelation::new(m);
    let mut covered = vec![false; m];
    let centers: BTreeSet<VertexId> = w.iter().copied().collect();
    for &v in &centers {
        let local = psp_from(g, &delta, v).local_coloring();
        for (_, class) in local.classes() {
            for &e in &class {
                covered[e] = true;
                union.insert(class[0], e);
            }
        }
    }
    Ok(closure_over(&union, |e| covered[e]))
}

fn oracle_connected(g: &Graph, w: &[VertexId]) -> bool {
    let adj = Adjacency::of(g);
    let set: BTreeSet<VertexId> = w.iter().copied().collect();
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut reached = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &set {
            if adj.adj(x, y) && reached.insert(y) {
                stack.push(y);
            }
        }
    }
    reached.len() == set.len()
}

/// Executable checks of the structural properties of PSPs and global
/// colorings. Each returns a list of human-readable violations.
pub mod audit {
    use super::*;

    /// Each non-primal edge is opposite to exactly one primal edge within the
    /// PSP, and shares its local class.
    pub fn non_primal_opposite_once(g: &Graph, psp: &OraclePsp) -> Vec<String> {
        let adj = Adjacency::of(g);
        let v = psp.center;
        let local = psp.local_coloring();
        let mut out = Vec::new();
        for &f in &psp.non_primal {
            let (a, b) = g.endpoints(f);
            let (u, x) = if adj.adj(v, a) { (a, b) } else { (b, a) };
            if !adj.adj(v, u) || adj.adj(v, x) {
                out.push(format!(
                    "non-primal edge {f} does not join a primal and a non-primal vertex"
                ));
                continue;
            }
            // primal vw with w ~ x and xw in the PSP: square v u x w
            let opposite: Vec<EdgeId> = (0..adj.n)
                .filter(|&w| w != u && adj.adj(v, w) && adj.adj(w, x))
                .filter(|&w| psp.contains(edge_id(g, w, x)))
                .map(|w| edge_id(g, v, w))
                .collect();
            if opposite.len() != 1 {
                out.push(format!(
                    "center {v}: non-primal edge {f} opposite to {} primal edges",
                    opposite.len()
                ));
            } else if !local.same_class(opposite[0], f) {
                out.push(format!(
                    "center {v}: non-primal edge {f} not in the class of its opposite {}",
                    opposite[0]
                ));
            }
        }
        out
    }

    /// Primal edges in different classes span a unique chordless square whose
    /// top vertex is unique.
    pub fn cross_class_primal_squares(g: &Graph, psp: &OraclePsp) -> Vec<String> {
        let adj = Adjacency::of(g);
        let v = psp.center;
        let mut out = Vec::new();
        let primal: Vec<EdgeId> = psp.primal.iter().copied().collect();
        for (i, &e) in primal.iter().enumerate() {
            for &f in &primal[i + 1..] {
                if psp.d_v_star.same_class(e, f) {
                    continue;
                }
                let (_, u, w) = adj
                    .shared_vertex(e, f)
                    .expect("primal edges share the center");
                let tops = adj.tops(v, u, w);
                let ok = tops.len() == 1
                    && adj.chordless_square(v, u, tops[0], w)
                    && adj.common(tops[0], v).len() == 2;
                if !ok {
                    out.push(format!(
                        "center {v}: primal edges {e}, {f} in different classes without a unique chordless square"
                    ));
                }
            }
        }
        out
    }

    /// Every vertex of `w` is incident to an edge of every class of `global`.
    pub fn every_vertex_meets_every_class(
        g: &Graph,
        w: &[VertexId],
        global: &EdgeColoring,
    ) -> Vec<String> {
        let classes = global.classes();
        let mut out = Vec::new();
        for &x in w {
            for (label, edges) in &classes {
                let meets = edges.iter().any(|&e| {
                    let (a, b) = g.endpoints(e);
                    a == x || b == x
                });
                if !meets {
                    out.push(format!("vertex {x} misses class {label}"));
                }
            }
        }
        out
    }

    /// BFS distances from `s` over the vertex pairs accepted by `adjacent`.
    fn distances(
        n: usize,
        adjacent: &dyn Fn(VertexId, VertexId) -> bool,
        s: VertexId,
    ) -> Vec<Option<usize>> {
        let mut dist = vec![None; n];
        dist[s] = Some(0);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let d = dist[a].map(|d| d + 1);
            for (b, slot) in dist.iter_mut().enumerate() {
                if slot.is_none() && adjacent(a, b) {
                    *slot = d;
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    fn psp_distances(g: &Graph, psp: &OraclePsp) -> Vec<(VertexId, Vec<Option<usize>>)> {
        let adj = Adjacency::of(g);
        let psp_edges = psp.edges();
        let in_psp =
            |a: VertexId, b: VertexId| adj.adj(a, b) && psp_edges.contains(&edge_id(g, a, b));
        psp.vertices(g)
            .into_iter()
            .map(|s| (s, distances(adj.n, &in_psp, s)))
            .collect()
    }

    /// Distances inside the PSP agree with distances in `g`. This fails
    /// whenever two primal vertices are adjacent in `g`.
    pub fn psp_is_isometric(g: &Graph, psp: &OraclePsp) -> Vec<String> {
        let adj = Adjacency::of(g);
        let in_g = |a: VertexId, b: VertexId| adj.adj(a, b);
        let inner = psp_distances(g, psp);
        let mut out = Vec::new();
        for (s, ds) in &inner {
            let dg = distances(adj.n, &in_g, *s);
            for (t, _) in &inner {
                if ds[*t] != dg[*t] {
                    out.push(format!(
                        "center {}: d_S({s},{t}) = {:?} but d_G = {:?}",
                        psp.center, ds[*t], dg[*t]
                    ));
                }
            }
        }
        out
    }

    /// The PSP embeds isometrically into the product of the stars formed by
    /// its local classes. A vertex gets one coordinate per class: the primal
    /// vertex it sees along that class, or the center when it has none.
    /// Distances in a product of stars count 1 per coordinate where exactly
    /// one side is the center and 2 where both are distinct leaves.
    pub fn psp_is_isometric_in_star_product(g: &Graph, psp: &OraclePsp) -> Vec<String> {
        let adj = Adjacency::of(g);
        let v = psp.center;
        let local = psp.local_coloring();
        let mut coords: BTreeMap<VertexId, BTreeMap<EdgeId, VertexId>> = BTreeMap::new();
        coords.insert(v, BTreeMap::new());
        for &e in &psp.primal {
            let (a, b) = g.endpoints(e);
            let u = if a == v { b } else { a };
            let class = local.class_of(e).expect("primal edges are colored");
            coords.entry(u).or_default().insert(class, u);
        }
        for &f in &psp.non_primal {
            let (a, b) = g.endpoints(f);
            let (u, x) = if adj.adj(v, a) { (a, b) } else { (b, a) };
            let inherited = coords.get(&u).cloned().unwrap_or_default();
            coords.entry(x).or_default().extend(inherited);
        }
        let star_distance = |p: &BTreeMap<EdgeId, VertexId>, q: &BTreeMap<EdgeId, VertexId>| {
            let classes: BTreeSet<EdgeId> = p.keys().chain(q.keys()).copied().collect();
            classes
                .into_iter()
                .map(|k| match (p.get(&k), q.get(&k)) {
                    (Some(a), Some(b)) if a == b => 0,
                    (Some(_), Some(_)) => 2,
                    _ => 1,
                })
                .sum::<usize>()
        };
        let mut out = Vec::new();
        for (s, ds) in psp_distances(g, psp) {
            for (t, ct) in &coords {
                let h = star_distance(&coords[&s], ct);
                if ds[*t] != Some(h) {
                    out.push(format!(
                        "center {v}: d_S({s},{t}) = {:?} but star product distance {h}",
                        ds[*t]
                    ));
                }
            }
        }
        out
    }
}
