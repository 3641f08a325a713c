//! Immutable simple connected graphs with an edge list and an extended
//! adjacency list.
//!
//! Every adjacency entry carries the id of the edge that realizes it, so the
//! per-edge color slot of a neighbor can be reached in constant time while
//! scanning neighborhoods.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// Dense edge index in `[0, m)`, the position in the edge list.
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected two vertex ids, found {found} token(s)")]
    MalformedLine { line: usize, found: usize },
    #[error("line {line}: invalid vertex id `{token}`")]
    InvalidVertex { line: usize, token: String },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: u64 },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: u64, v: u64 },
    #[error("graph is disconnected: {reached} of {n} vertices reachable from the first vertex")]
    Disconnected { reached: usize, n: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<usize>,
    adjacency: Vec<(VertexId, EdgeId)>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Adjacency lists follow the order of
    /// `edges`, which fixes every downstream tie-break.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::build(n, edges, (0..n as u64).collect())
    }

    fn build(
        n: usize,
        edges: &[(VertexId, VertexId)],
        labels: Vec<u64>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: labels[u] });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge {
                    u: labels[u],
                    v: labels[v],
                });
            }
            normalized.push(key);
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in &normalized {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![(0, 0); offsets[n]];
        for (e, &(u, v)) in normalized.iter().enumerate() {
            adjacency[fill[u]] = (v, e);
            fill[u] += 1;
            adjacency[fill[v]] = (u, e);
            fill[v] += 1;
        }

        let g = Graph {
            edges: normalized,
            offsets,
            adjacency,
            labels,
        };
        let reached = g.bfs_order(0).sequence.len();
        if reached != n {
            return Err(GraphError::Disconnected { reached, n });
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Neighbors of `v` together with the connecting edge, in input order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn edge_between(&self, u: VertexId, w: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(w) {
            (u, w)
        } else {
            (w, u)
        };
        self.neighbors(a)
            .iter()
            .find(|&&(x, _)| x == b)
            .map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.edge_between(u, w).is_some()
    }

    /// Original id of a dense vertex as it appeared in the input.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an original vertex label.
    pub fn vertex_of_label(&self, label: u64) -> Option<VertexId> {
        // Identity labelling is the common case.
        if let Some(&l) = self.labels.get(label as usize) {
            if l == label {
                return Some(label as usize);
            }
        }
        self.labels.iter().position(|&l| l == label)
    }

    /// Breadth-first order from `root`, appending neighbors in adjacency order.
    pub fn bfs_order(&self, root: VertexId) -> BfsOrder {
        self.bfs_order_within(root, |_| true)
    }

    /// Breadth-first order of the subgraph induced by the vertices accepted by
    /// `inside`. Only the component of `root` is returned.
    pub fn bfs_order_within<F>(&self, root: VertexId, inside: F) -> BfsOrder
    where
        F: Fn(VertexId) -> bool,
    {
        let n = self.vertex_count();
        assert!(root < n, "root {root} out of range");
        let mut seen = vec![false; n];
        let mut sequence = Vec::new();
        let mut queue = VecDeque::new();
        seen[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            sequence.push(v);
            for &(u, _) in self.neighbors(v) {
                if !seen[u] && inside(u) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        BfsOrder { root, sequence }
    }

    /// Sorted list of all vertices adjacent to both `u` and `w`.
    pub fn common_neighbors(&self, u: VertexId, w: VertexId) -> Vec<VertexId> {
        let mut a: Vec<VertexId> = self.neighbors(u).iter().map(|&(x, _)| x).collect();
        let mut b: Vec<VertexId> = self.neighbors(w).iter().map(|&(x, _)| x).collect();
        a.sort_unstable();
        b.sort_unstable();
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Checks that `vertices` induce a connected subgraph.
    pub fn induces_connected(&self, vertices: &[VertexId]) -> bool {
        let Some(&first) = vertices.first() else {
            return false;
        };
        let mut inside = vec![false; self.vertex_count()];
        for &v in vertices {
            inside[v] = true;
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        self.bfs_order_within(first, |v| inside[v]).sequence.len() == distinct
    }

    /// Same graph with vertex `v` renamed to `perm[v]`; edge order is kept.
    pub fn relabeled(&self, perm: &[VertexId]) -> Graph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("relabeling preserves validity")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsOrder {
    pub root: VertexId,
    pub sequence: Vec<VertexId>,
}

/// Parses the edge-list format: one edge per line as two whitespace-separated
/// nonnegative integers, `#` comment lines and blank lines ignored.
///
/// Vertex ids that already form `0..n` are kept as written; otherwise they are
/// densified in order of first appearance and the original ids retained as
/// labels.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::MalformedLine {
                line: line_no,
                found: tokens.len(),
            });
        }
        let parse = |t: &str| {
            t.parse::<u64>().map_err(|_| GraphError::InvalidVertex {
                line: line_no,
                token: t.to_string(),
            })
        };
        raw.push((parse(tokens[0])?, parse(tokens[1])?));
    }
    if raw.is_empty() {
        return Err(GraphError::Empty);
    }

    let mut order: Vec<u64> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    for &(a, b) in &raw {
        for x in [a, b] {
            index.entry(x).or_insert_with(|| {
                order.push(x);
                order.len() - 1
            });
        }
    }
    let n = order.len();
    let already_dense = order.iter().all(|&x| (x as usize) < n);
    let labels: Vec<u64> = if already_dense {
        (0..n as u64).collect()
    } else {
        order
    };
    let dense = |x: u64| -> usize {
        if already_dense {
            x as usize
        } else {
            index[&x]
        }
    };
    let edges: Vec<_> = raw.iter().map(|&(a, b)| (dense(a), dense(b))).collect();
    Graph::build(n, &edges, labels)
}

/// Parses a whitespace-separated list of original vertex ids (`#` comments)
/// and maps them to dense ids of `g`.
pub fn parse_vertex_list(g: &Graph, text: &str) -> Result<Vec<VertexId>, GraphError> {
    parse_vertex_lines(g, text).map(|lines| lines.into_iter().flatten().collect())
}

/// Like [`parse_vertex_list`] but keeps one vector per non-comment line.
pub fn parse_vertex_lines(g: &Graph, text: &str) -> Result<Vec<Vec<VertexId>>, GraphError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in trimmed.split_whitespace() {
            let invalid = || GraphError::InvalidVertex {
                line: idx + 1,
                token: token.to_string(),
            };
            let label: u64 = token.parse().map_err(|_| invalid())?;
            row.push(g.vertex_of_label(label).ok_or_else(invalid)?);
        }
        out.push(row);
    }
    Ok(out)
}
