//! Solvers for Vertex Cover Knapsack and its set-cover relatives.
//!
//! The crate provides exhaustive oracles, treewidth dynamic programs that
//! track Pareto fronts of `(weight, value)` pairs, primal-dual and greedy
//! approximations for set-cover style targets, instance generators, text
//! formats and a benchmarking harness.
//!
//! Vertices, elements and sets are 0-indexed in the API and 1-indexed in
//! files.

pub mod approx;
pub mod bench;
pub mod dp;
pub mod error;
pub mod front;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod parallel;
pub mod reductions;
pub mod setsys;
pub mod treewidth;

pub use error::{Result, VckError};
pub use front::{decide, pareto_insert, pareto_join, pareto_merge, pareto_shift, Pair, ParetoFront};
pub use graph::{is_minimal_vertex_cover, is_vertex_cover, VertexGraph};
pub use instance::{KnapsackBound, Solution, Variant, VariantKind, VckInstance};
pub use setsys::{HittingSetSystem, SetSystem, WeightedSet};
