//! Graphviz rendering of edge colorings.

use std::fmt::Write;

use crate::coloring::EdgeColoring;
use crate::graph::Graph;

/// Size of the Graphviz `set312` color scheme used for class colors.
const PALETTE: usize = 12;

/// DOT text with one pen color index per class (cycling through the palette
/// when there are more classes than colors). Uncolored edges are dashed.
pub fn emit_dot(g: &Graph, coloring: &EdgeColoring) -> String {
    let mut rank = vec![usize::MAX; g.edge_count()];
    for (i, (label, _)) in coloring.classes().into_iter().enumerate() {
        rank[label] = i;
    }
    let mut out = String::new();
    out.push_str("graph G {\n");
    out.push_str("  edge [colorscheme=set312, penwidth=2];\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {};", g.label(v));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (g.label(u), g.label(v));
        match coloring.class_of(e) {
            Some(label) => {
                let i = rank[label];
                let _ = writeln!(
                    out,
                    "  {a} -- {b} [color={}, tooltip=\"class {i}\"];",
                    i % PALETTE + 1
                );
            }
            None => {
                let _ = writeln!(out, "  {a} -- {b} [style=dashed, color=black];");
            }
        }
    }
    out.push_str("}\n");
    out
}
