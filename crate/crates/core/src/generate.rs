//! Graph families used by tests, benchmarks and the `generate` command.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, VertexId};
use crate::product::cartesian_product;

fn build(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid graph")
}

/// Path on `n >= 1` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// Cycle on `n >= 3` vertices: `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

/// Star `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    build(k + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

/// `K_{a,b}`: vertices `0..a` on one side, `a..a+b` on the other.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    build(a + b, &edges)
}

/// `rows x cols` grid, vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, &edges)
}

/// `d`-dimensional hypercube on bit strings.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for bit in 0..d {
            let u = v ^ (1 << bit);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    build(n, &edges)
}

/// Möbius ladder: the cycle `C_{2k}` plus the `k` chords `i, i + k`.
/// For `k >= 3` it is prime yet carries two δ* classes (rungs and rim).
pub fn mobius_ladder(k: usize) -> Graph {
    assert!(k >= 2);
    let n = 2 * k;
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..k).map(|i| (i, i + k)));
    build(n, &edges)
}

/// Prism `C_k □ K_2`.
pub fn prism(k: usize) -> Graph {
    cartesian_product(&cycle(k), &path(2)).graph
}

/// Uniform-ish random connected graph: a random recursive tree on shuffled
/// labels plus random extra edges, `m` clamped to `[n - 1, n(n-1)/2]`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let max_m = n * (n - 1) / 2;
    let m = m.clamp(n - 1, max_m);
    let mut labels: Vec<VertexId> = (0..n).collect();
    labels.shuffle(rng);
    let mut present = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (labels[i], labels[j]);
        present.insert((a.min(b), a.max(b)));
        edges.push((a, b));
    }
    if m - edges.len() > (max_m - edges.len()) / 2 {
        // dense: pick from the remaining pairs directly
        let mut rest: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|p| !present.contains(p))
            .collect();
        rest.shuffle(rng);
        edges.extend(rest.into_iter().take(m - (n - 1)));
    } else {
        while edges.len() < m {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && present.insert((a.min(b), a.max(b))) {
                edges.push((a, b));
            }
        }
    }
    edges.shuffle(rng);
    build(n, &edges)
}

/// Random vertex set of size `size` (clamped to `n`) inducing a connected
/// subgraph, grown from `seed` by random frontier expansion.
pub fn random_connected_subset<R: Rng + ?Sized>(
    g: &Graph,
    seed: VertexId,
    size: usize,
    rng: &mut R,
) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    let mut set = vec![seed];
    inside[seed] = true;
    let mut frontier: Vec<VertexId> = Vec::new();
    let push_frontier = |v: VertexId, frontier: &mut Vec<VertexId>, inside: &[bool]| {
        for &(u, _) in g.neighbors(v) {
            if !inside[u] {
                frontier.push(u);
            }
        }
    };
    push_frontier(seed, &mut frontier, &inside);
    while set.len() < size.min(n) && !frontier.is_empty() {
        let i = rng.gen_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        if inside[v] {
            continue;
        }
        inside[v] = true;
        set.push(v);
        push_frontier(v, &mut frontier, &inside);
    }
    set
}

/// Random partition of `V(g)` into at most `k` blocks, each inducing a
/// connected subgraph. Blocks grow simultaneously from random seeds.
pub fn random_partition<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let k = k.clamp(1, n);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut seeds: Vec<VertexId> = (0..n).collect();
    seeds.shuffle(rng);
    let mut blocks: Vec<Vec<VertexId>> = Vec::with_capacity(k);
    for (i, &s) in seeds[..k].iter().enumerate() {
        owner[s] = Some(i);
        blocks.push(vec![s]);
    }
    let mut assigned = k;
    while assigned < n {
        // claim a random unowned vertex adjacent to a random block
        let b = rng.gen_range(0..k);
        let candidates: Vec<VertexId> = blocks[b]
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().map(|&(u, _)| u))
            .filter(|&u| owner[u].is_none())
            .collect();
        if let Some(&u) = candidates.choose(rng) {
            owner[u] = Some(b);
            blocks[b].push(u);
            assigned += 1;
        }
    }
    blocks
}

/// Random vertex permutation.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<VertexId> {
    let mut p: Vec<VertexId> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// All connected graphs on `n <= 8` vertices, one per isomorphism class.
///
/// Every connected graph has a vertex whose removal keeps it connected, so
/// the graphs on `n` vertices arise from those on `n - 1` by attaching a new
/// vertex to a nonempty neighbor set. Duplicates are removed by a canonical
/// adjacency code.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "enumeration supports 1..=8 vertices");
    let mut level: Vec<Vec<u8>> = vec![vec![0]];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for rows in &level {
            for mask in 1u16..(1 << (size - 1)) {
                let mut grown = rows.clone();
                let mut new_row = 0u8;
                for (i, row) in grown.iter_mut().enumerate() {
                    if mask & (1 << i) != 0 {
                        *row |= 1 << (size - 1);
                        new_row |= 1 << i;
                    }
                }
                grown.push(new_row);
                if seen.insert(canonical_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
        .iter()
        .map(|rows| {
            let mut edges = Vec::new();
            for (i, &row) in rows.iter().enumerate() {
                for j in i + 1..rows.len() {
                    if row & (1 << j) != 0 {
                        edges.push((i, j));
                    }
                }
            }
            build(rows.len(), &edges)
        })
        .collect()
}

/// Smallest upper-triangle bit code over all vertex orders that list vertices
/// by a refined degree invariant, permuting freely within equal cells.
fn canonical_code(rows: &[u8]) -> u64 {
    let n = rows.len();
    let degree: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let mut color: Vec<u64> = degree.iter().map(|&d| d as u64).collect();
    for _ in 0..n {
        let mut sig: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = (0..n)
                    .filter(|&u| rows[v] & (1 << u) != 0)
                    .map(|u| color[u])
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let refined: Vec<u64> = sig
            .iter_mut()
            .map(|s| distinct.binary_search(s).unwrap() as u64)
            .collect();
        let before = {
            let mut c = color.clone();
            c.sort();
            c.dedup();
            c.len()
        };
        color = refined;
        if distinct.len() == before {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| color[v]);
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || color[order[i]] != color[order[start]] {
            cells.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_cells(rows, &mut order, &cells, 0, &mut best);
    best
}

fn permute_cells(
    rows: &[u8],
    order: &mut [usize],
    cells: &[(usize, usize)],
    cell: usize,
    best: &mut u64,
) {
    if cell == cells.len() {
        let n = order.len();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code = (code << 1) | ((rows[order[i]] >> order[j]) & 1) as u64;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let (lo, hi) = cells[cell];
    heap_permutations(rows, order, cells, cell, lo, hi - lo, best);
}

// Heap's algorithm over `order[lo..lo + k]`.
fn heap_permutations(
    rows: &[u8],
    order: &mut [usize],
    cells: &[(usize, usize)],
    cell: usize,
    lo: usize,
    k: usize,
    best: &mut u64,
) {
    if k <= 1 {
        permute_cells(rows, order, cells, cell + 1, best);
        return;
    }
    for i in 0..k {
        heap_permutations(rows, order, cells, cell, lo, k - 1, best);
        let swap = if k.is_multiple_of(2) { lo + i } else { lo };
        if i + 1 < k {
            order.swap(swap, lo + k - 1);
        }
    }
}
