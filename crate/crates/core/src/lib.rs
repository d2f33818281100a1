//! Edge-colored, complex-weighted experiment graphs for GHZ-state design.
//!
//! A perfect matching of an experiment graph induces a vertex coloring; the
//! weight of a coloring is the sum of the weights of the matchings inducing
//! it. A graph is *valid* when every feasible monochromatic coloring weighs
//! exactly 1 and every other coloring weighs 0, and its dimension `μ` is the
//! number of feasible monochromatic colorings.
//!
//! The crate computes those weights exactly over `Q[i]`, prunes edges with
//! rules that keep validity and `μ`, checks the structural inequalities
//! behind the bound `μ ≤ n/√2`, and searches small vertex counts
//! exhaustively.

pub mod canon;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod gaussian;
pub mod graph;
pub mod io;
pub mod matching;
pub mod poly;
pub mod search;
pub mod sparsify;
pub mod validity;

pub use canon::{canonical_coloring_form, canonical_form};
pub use certificate::{
    build_chi, certificate_report, partition_ru, select_base_edge, CertificateReport, RepresentativeSparseGraph,
    SparsePartition,
};
pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use graph::{color_degree, induced_subgraph, Color, ExperimentGraph, HalfColoredEdge, Vertex, VertexColoring};
pub use matching::{
    enumerate_perfect_matchings, induced_coloring, matching_weight, weight_table, PerfectMatching, WeightTable,
};
pub use validity::{bound_report, check_monoedge_property, dimension, verify, DimensionReport, Verdict};
pub use sparsify::{
    color_isolated_prune, find_color_isolated_edges, infeasible_color_prune, matching_covered_reduction,
    prune_to_fixpoint, PruneTrace,
};
