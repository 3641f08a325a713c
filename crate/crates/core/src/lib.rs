//! Computation of the edge relation δ* of a connected graph from partial
//! star products (PSPs).
//!
//! Every vertex `v` spans a PSP: its incident edges plus the far edges of
//! the chordless squares its edges span in different local classes. Merging
//! the local colorings of all PSPs, in BFS order so that every new center
//! touches the already treated region, yields δ*; a graph is a quasi
//! Cartesian product exactly when δ* has at least two classes. With bounded
//! maximum degree Δ the whole computation takes `O(|E| Δ)` time.
//!
//! ```
//! use deltastar_core::{compute_delta_star, generate};
//!
//! let cube = generate::hypercube(3);
//! let result = compute_delta_star(&cube, 0).unwrap();
//! assert_eq!(result.class_count, 3);
//! ```
//!
//! The [`oracle`] module recomputes the same relations by brute force from
//! their definitions and is what the test suites compare against.

pub mod color_graph;
pub mod coloring;
pub mod dot;
pub mod generate;
pub mod global;
pub mod graph;
pub mod oracle;
pub mod parallel;
pub mod product;
pub mod psp;
pub mod report;

pub use color_graph::{ColorGraph, MergeCost};
pub use coloring::{ColoringDifference, EdgeColoring};
pub use dot::emit_dot;
pub use global::{
    classify_quasi_product, compute_delta_star, compute_global_coloring, GlobalColoringResult,
    GlobalError, QuasiProductReport, RunStats,
};
pub use graph::{parse_graph, BfsOrder, EdgeId, Graph, GraphError, VertexId};
pub use parallel::{
    compute_delta_star_parallel, parse_partition, validate_partition, ParallelError,
    ParallelResult, ParallelStats, Partition, PartitionError,
};
pub use product::{cartesian_product, ProductGraph};
pub use psp::{
    local_classes_from_lists, recognize_psp, GlobalColoringState, PairMatrix, Psp, PspContext,
    PspEdge, PspError, PspStats,
};
pub use report::format_classes;
