//! Canonical edge partitions.

use crate::graph::{EdgeId, Graph};

/// A partition of a subset of the edges. Every class is labeled by the
/// smallest edge id it contains; edges outside the subset carry `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    class_of: Vec<Option<EdgeId>>,
}

impl EdgeColoring {
    /// Canonicalizes arbitrary class keys: edges with equal keys share a class.
    pub fn from_keys<K>(keys: &[Option<K>]) -> Self
    where
        K: Copy + Eq + std::hash::Hash,
    {
        let mut first = std::collections::HashMap::new();
        let class_of = keys
            .iter()
            .enumerate()
            .map(|(e, key)| key.map(|k| *first.entry(k).or_insert(e)))
            .collect();
        EdgeColoring { class_of }
    }

    /// Coloring with every edge uncolored.
    pub fn uncolored(m: usize) -> Self {
        EdgeColoring {
            class_of: vec![None; m],
        }
    }

    pub fn edge_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, e: EdgeId) -> Option<EdgeId> {
        self.class_of[e]
    }

    pub fn labels(&self) -> &[Option<EdgeId>] {
        &self.class_of
    }

    pub fn covered_edges(&self) -> usize {
        self.class_of.iter().filter(|c| c.is_some()).count()
    }

    /// Classes sorted by label, each listing its edges in increasing order.
    pub fn classes(&self) -> Vec<(EdgeId, Vec<EdgeId>)> {
        let mut slot = vec![usize::MAX; self.class_of.len()];
        let mut out: Vec<(EdgeId, Vec<EdgeId>)> = Vec::new();
        for (e, c) in self.class_of.iter().enumerate() {
            if let Some(label) = *c {
                if slot[label] == usize::MAX {
                    slot[label] = out.len();
                    out.push((label, Vec::new()));
                }
                out[slot[label]].1.push(e);
            }
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(e, c)| *c == Some(e))
            .count()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes().into_iter().map(|(_, es)| es.len()).collect()
    }

    pub fn same_class(&self, e: EdgeId, f: EdgeId) -> bool {
        matches!((self.class_of[e], self.class_of[f]), (Some(a), Some(b)) if a == b)
    }

    /// Restricts the partition to the edges where `keep` holds and relabels.
    pub fn restricted<F: Fn(EdgeId) -> bool>(&self, keep: F) -> Self {
        let keys: Vec<Option<EdgeId>> = self
            .class_of
            .iter()
            .enumerate()
            .map(|(e, c)| if keep(e) { *c } else { None })
            .collect();
        Self::from_keys(&keys)
    }

    /// First witness that two colorings disagree, scanning edges in order.
    pub fn first_difference(&self, other: &EdgeColoring) -> Option<ColoringDifference> {
        assert_eq!(self.edge_count(), other.edge_count());
        for e in 0..self.edge_count() {
            let (a, b) = (self.class_of[e], other.class_of[e]);
            if a.is_some() != b.is_some() {
                return Some(ColoringDifference::Coverage { edge: e });
            }
            if a != b {
                // Labels are class minima, so one of the two labels is an edge
                // placed with `e` by one coloring and apart by the other.
                let f = a.unwrap().min(b.unwrap());
                return Some(ColoringDifference::Pair {
                    e: f,
                    f: e,
                    together_in_first: self.same_class(e, f),
                });
            }
        }
        None
    }

    /// Does every class of `self` lie inside a class of `coarser`?
    pub fn refines(&self, coarser: &EdgeColoring) -> bool {
        let mut image: Vec<Option<EdgeId>> = vec![None; self.edge_count()];
        for e in 0..self.edge_count() {
            if let Some(c) = self.class_of[e] {
                let Some(d) = coarser.class_of[e] else {
                    return false;
                };
                match image[c] {
                    None => image[c] = Some(d),
                    Some(prev) if prev != d => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// `u-v` rendering of an edge with original vertex labels.
    pub fn edge_name(g: &Graph, e: EdgeId) -> String {
        let (u, v) = g.endpoints(e);
        format!("{}-{}", g.label(u), g.label(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringDifference {
    /// Colored in exactly one of the two colorings.
    Coverage { edge: EdgeId },
    /// Together in one coloring and apart in the other.
    Pair {
        e: EdgeId,
        f: EdgeId,
        together_in_first: bool,
    },
}
