//! Merge structure for temporary colors.
//!
//! The vertices are the initial colors; merging two colors adds an edge
//! between their components, so components are the current colors. Every
//! color-vertex stores the index of its component, and a merge reassigns the
//! smaller component to the index of the larger one. A vertex is relabeled
//! only when its component at least doubles, so `k` colors see at most
//! `k * log2(k)` relabelings in total.

/// Acyclic merge graph over `k` initial colors.
#[derive(Debug, Clone, Default)]
pub struct ColorGraph {
    component_index: Vec<u32>,
    // Indexed by component id; only meaningful for live components.
    component_size: Vec<u32>,
    members: Vec<Vec<u32>>,
    edge_count: usize,
    relabels: u64,
    #[cfg(debug_assertions)]
    merge_edges: Vec<(u32, u32)>,
}

impl ColorGraph {
    /// `k` singleton colors; color `j` starts in component `j`.
    pub fn new(k: usize) -> Self {
        let mut cg = ColorGraph::default();
        cg.reset(k);
        cg
    }

    /// Reinitializes to `k` singletons, reusing allocations.
    pub fn reset(&mut self, k: usize) {
        self.component_index.clear();
        self.component_index.extend(0..k as u32);
        self.component_size.clear();
        self.component_size.resize(k, 1);
        self.members.truncate(k);
        for (j, m) in self.members.iter_mut().enumerate() {
            m.clear();
            m.push(j as u32);
        }
        for j in self.members.len()..k {
            self.members.push(vec![j as u32]);
        }
        self.edge_count = 0;
        self.relabels = 0;
        #[cfg(debug_assertions)]
        self.merge_edges.clear();
    }

    /// Appends a fresh singleton color and returns its id.
    pub fn push_color(&mut self) -> usize {
        let j = self.component_index.len();
        self.component_index.push(j as u32);
        self.component_size.push(1);
        if self.members.len() > j {
            self.members[j].clear();
            self.members[j].push(j as u32);
        } else {
            self.members.push(vec![j as u32]);
        }
        j
    }

    /// Number of color-vertices.
    pub fn len(&self) -> usize {
        self.component_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.component_index.is_empty()
    }

    #[inline]
    pub fn component_of(&self, a: usize) -> usize {
        self.component_index[a] as usize
    }

    pub fn component_size(&self, a: usize) -> usize {
        self.component_size[self.component_of(a)] as usize
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.component_index[a] == self.component_index[b]
    }

    /// Joins the colors of `a` and `b`. Returns `false` if they already share
    /// a component. On equal sizes the component of `a` keeps its index.
    pub fn merge(&mut self, a: usize, b: usize) -> bool {
        let ca = self.component_index[a] as usize;
        let cb = self.component_index[b] as usize;
        if ca == cb {
            return false;
        }
        let (keep, absorb) = if self.component_size[ca] >= self.component_size[cb] {
            (ca, cb)
        } else {
            (cb, ca)
        };
        let moved = std::mem::take(&mut self.members[absorb]);
        for &x in &moved {
            self.component_index[x as usize] = keep as u32;
        }
        self.relabels += moved.len() as u64;
        self.component_size[keep] += self.component_size[absorb];
        self.component_size[absorb] = 0;
        self.members[keep].extend_from_slice(&moved);
        self.edge_count += 1;
        #[cfg(debug_assertions)]
        self.merge_edges.push((a as u32, b as u32));
        true
    }

    /// Merge edges added so far.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn component_count(&self) -> usize {
        self.len() - self.edge_count
    }

    /// Individual component-index reassignments performed by merges.
    pub fn relabel_count(&self) -> u64 {
        self.relabels
    }

    /// Recorded merge edges, for auditing the component indices.
    #[cfg(debug_assertions)]
    pub fn merge_edges(&self) -> &[(u32, u32)] {
        &self.merge_edges
    }

    pub fn merge_cost(&self) -> MergeCost {
        MergeCost {
            colors: self.len(),
            relabels: self.relabels,
        }
    }
}

/// Relabeling work of one color graph against the `k log2 k` bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MergeCost {
    pub colors: usize,
    pub relabels: u64,
}

impl MergeCost {
    pub fn bound(&self) -> f64 {
        let k = self.colors as f64;
        if self.colors <= 1 {
            0.0
        } else {
            k * k.log2()
        }
    }

    pub fn within_bound(&self) -> bool {
        self.relabels as f64 <= self.bound() + 1e-9
    }
}
