//! Small named graphs used throughout the tests and the documentation.
//!
//! All of them are built with 1-based display labels so that vertex names
//! match the usual drawings (`{1,2}` is internal edge `(0, 1)`).

use crate::gaussian::GaussianRational;
use crate::graph::{ExperimentGraph, HalfColoredEdge};

pub const RED: usize = 0;
pub const GREEN: usize = 1;
pub const BLUE: usize = 2;

fn one() -> GaussianRational {
    GaussianRational::from(1)
}

/// 1-based mono edge helper.
fn mono(a: usize, b: usize, c: usize) -> HalfColoredEdge {
    HalfColoredEdge::mono(a - 1, b - 1, c, one())
}

/// The six-vertex GHZ(6,2) graph: green `{1,2},{3,4},{5,6},{3,6}`, red
/// `{1,6},{2,3},{4,5}`, and two bi-chromatic edges `{4,6}` and `{3,5}` of
/// weight `i` whose halves at 4 and 5 are red.
pub fn fig1() -> ExperimentGraph {
    let i = GaussianRational::i();
    let edges = vec![
        mono(1, 2, GREEN),
        mono(3, 4, GREEN),
        mono(5, 6, GREEN),
        mono(3, 6, GREEN),
        mono(1, 6, RED),
        mono(2, 3, RED),
        mono(4, 5, RED),
        HalfColoredEdge::new(3, 5, RED, GREEN, i.clone()),
        HalfColoredEdge::new(2, 4, GREEN, RED, i),
    ];
    ExperimentGraph::new(6, edges).expect("fixture").with_index_base(1)
}

/// `fig1` with the weight of `{3,5}` changed from `i` to `1`; invalid.
pub fn fig1_broken() -> ExperimentGraph {
    let g = fig1();
    let idx = g.edge_index(2, 4).expect("{3,5}");
    let edges = g.edges().iter().enumerate().map(|(k, e)| {
        let mut e = e.clone();
        if k == idx {
            e.weight = one();
        }
        e
    });
    g.rebuild(edges.collect::<Vec<_>>()).expect("fixture")
}

/// K4 with its three perfect matchings colored blue `{1,2},{3,4}`, green
/// `{1,3},{2,4}`, red `{1,4},{2,3}`; all weights 1. Dimension 3.
pub fn k4_three_colored() -> ExperimentGraph {
    let edges = vec![
        mono(1, 2, BLUE),
        mono(3, 4, BLUE),
        mono(1, 3, GREEN),
        mono(2, 4, GREEN),
        mono(1, 4, RED),
        mono(2, 3, RED),
    ];
    ExperimentGraph::new(4, edges).expect("fixture").with_index_base(1)
}

/// Alternating 2-colored 6-cycle: green `{1,2},{3,4},{5,6}`, red
/// `{1,6},{2,3},{4,5}`, all weights 1.
pub fn c6_alternating() -> ExperimentGraph {
    let edges = vec![
        mono(1, 2, GREEN),
        mono(3, 4, GREEN),
        mono(5, 6, GREEN),
        mono(1, 6, RED),
        mono(2, 3, RED),
        mono(4, 5, RED),
    ];
    ExperimentGraph::new(6, edges).expect("fixture").with_index_base(1)
}

/// Path 0–1–2–3 with three monochromatic color-0 edges of weight 1
/// (0-based labels).
pub fn path4() -> ExperimentGraph {
    let edges = (0..3).map(|k| HalfColoredEdge::mono(k, k + 1, 0, one()));
    ExperimentGraph::new(4, edges).expect("fixture")
}

/// One monochromatic edge of color 0 and weight 1 on two vertices
/// (0-based labels).
pub fn single_edge() -> ExperimentGraph {
    ExperimentGraph::new(2, [HalfColoredEdge::mono(0, 1, 0, one())]).expect("fixture")
}
