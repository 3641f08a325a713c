//! Cartesian product of two graphs with the factor coordinate recorded on
//! every edge.

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone)]
pub struct ProductGraph {
    pub graph: Graph,
    /// `1` if the edge varies the first coordinate, `2` for the second.
    pub factor_of_edge: Vec<u8>,
    pub factor_sizes: (usize, usize),
}

impl ProductGraph {
    /// Product vertex of the coordinate pair, row-major.
    pub fn vertex(&self, a: VertexId, b: VertexId) -> VertexId {
        a * self.factor_sizes.1 + b
    }
}

/// `g1 □ g2`: `(a, b)` is vertex `a * |V2| + b`. Edges of the first factor
/// come first, grouped by factor edge.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> ProductGraph {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let id = |a: VertexId, b: VertexId| a * n2 + b;
    let mut edges = Vec::with_capacity(g1.edge_count() * n2 + n1 * g2.edge_count());
    let mut factor_of_edge = Vec::with_capacity(edges.capacity());
    for &(a, a2) in g1.edges() {
        for b in 0..n2 {
            edges.push((id(a, b), id(a2, b)));
            factor_of_edge.push(1);
        }
    }
    for &(b, b2) in g2.edges() {
        for a in 0..n1 {
            edges.push((id(a, b), id(a, b2)));
            factor_of_edge.push(2);
        }
    }
    let graph = Graph::from_edges(n1 * n2, &edges).expect("product of connected graphs");
    ProductGraph {
        graph,
        factor_of_edge,
        factor_sizes: (n1, n2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn k2_squared_is_c4() {
        let k2 = generate::path(2);
        let p = cartesian_product(&k2, &k2);
        assert_eq!(p.graph.vertex_count(), 4);
        assert_eq!(p.graph.edge_count(), 4);
        let mut colors = p.factor_of_edge.clone();
        colors.sort();
        assert_eq!(colors, vec![1, 1, 2, 2]);
        assert!((0..4).all(|v| p.graph.degree(v) == 2));
    }

    #[test]
    fn domino() {
        let p = cartesian_product(&generate::path(3), &generate::path(2));
        assert_eq!(p.graph.vertex_count(), 6);
        assert_eq!(p.graph.edge_count(), 7);
        assert_eq!(p.factor_of_edge.iter().filter(|&&c| c == 1).count(), 4);
        assert_eq!(p.factor_of_edge.iter().filter(|&&c| c == 2).count(), 3);
    }

    #[test]
    fn k1_is_unit() {
        let g = generate::cycle(5);
        let k1 = generate::path(1);
        let p = cartesian_product(&k1, &g);
        assert_eq!(p.graph.edges(), g.edges());
        assert!(p.factor_of_edge.iter().all(|&c| c == 2));
    }
}
