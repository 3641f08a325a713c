//! Canonical text listing of edge classes.

use std::fmt::Write;

use crate::coloring::EdgeColoring;
use crate::graph::Graph;

/// One line per class, `class <i>: u-v, u-v, ...`, with classes numbered in
/// order of their smallest edge and vertices written with their input ids.
pub fn format_classes(g: &Graph, coloring: &EdgeColoring) -> String {
    let mut out = String::new();
    for (i, (_, edges)) in coloring.classes().into_iter().enumerate() {
        let names: Vec<String> = edges
            .iter()
            .map(|&e| EdgeColoring::edge_name(g, e))
            .collect();
        let _ = writeln!(out, "class {i}: {}", names.join(", "));
    }
    out
}
