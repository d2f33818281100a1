//! Experiment graphs: simple graphs whose edges carry one color per half-edge
//! and a nonzero exact weight.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

pub type Vertex = usize;
pub type Color = usize;

/// An edge `{u, v}` with color `color_at_u` on the half at `u` and
/// `color_at_v` on the half at `v`. Stored with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfColoredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub color_at_u: Color,
    pub color_at_v: Color,
    pub weight: GaussianRational,
}

impl HalfColoredEdge {
    /// Builds an edge, swapping endpoints (and their colors) so that `u <= v`.
    pub fn new(a: Vertex, b: Vertex, color_at_a: Color, color_at_b: Color, weight: GaussianRational) -> Self {
        if a <= b {
            HalfColoredEdge { u: a, v: b, color_at_u: color_at_a, color_at_v: color_at_b, weight }
        } else {
            HalfColoredEdge { u: b, v: a, color_at_u: color_at_b, color_at_v: color_at_a, weight }
        }
    }

    pub fn mono(a: Vertex, b: Vertex, color: Color, weight: GaussianRational) -> Self {
        Self::new(a, b, color, color, weight)
    }

    pub fn is_monochromatic(&self) -> bool {
        self.color_at_u == self.color_at_v
    }

    /// `c(e)`, defined only for monochromatic edges.
    pub fn color(&self) -> Option<Color> {
        self.is_monochromatic().then_some(self.color_at_u)
    }

    /// `c(e, x)`.
    pub fn color_at(&self, x: Vertex) -> Option<Color> {
        if x == self.u {
            Some(self.color_at_u)
        } else if x == self.v {
            Some(self.color_at_v)
        } else {
            None
        }
    }

    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    pub fn pair(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }
}

/// The graph `G`. Immutable once built.
///
/// Colors are stored normalized to `0..color_count()`; the original labels
/// (sorted ascending) are kept in `color_labels` so that files round-trip.
/// `index_base` is the offset used when vertices are shown to a user
/// (1 for graphs read from 1-based files).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExperimentGraph {
    vertex_count: usize,
    edges: Vec<HalfColoredEdge>,
    color_labels: Vec<usize>,
    index_base: usize,
}

impl ExperimentGraph {
    /// Builds a graph from edges whose colors are arbitrary labels.
    ///
    /// Rejects self-loops, zero weights, out-of-range vertices and repeated
    /// vertex pairs. Colors are renumbered to a contiguous range in label
    /// order.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = HalfColoredEdge>) -> Result<Self> {
        let mut edges: Vec<HalfColoredEdge> = edges
            .into_iter()
            .map(|e| HalfColoredEdge::new(e.u, e.v, e.color_at_u, e.color_at_v, e.weight))
            .collect();
        for e in &edges {
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
            if e.v >= vertex_count {
                return Err(Error::Input(format!(
                    "edge {{{}, {}}} references a vertex outside 0..{vertex_count}",
                    e.u, e.v
                )));
            }
            if e.weight.is_zero() {
                return Err(Error::ZeroWeight(e.u, e.v));
            }
        }
        edges.sort_by_key(|e| e.pair());
        if let Some(w) = edges.windows(2).find(|w| w[0].pair() == w[1].pair()) {
            return Err(Error::Multigraph(w[0].u, w[0].v));
        }

        let labels: BTreeSet<usize> = edges.iter().flat_map(|e| [e.color_at_u, e.color_at_v]).collect();
        let color_labels: Vec<usize> = labels.into_iter().collect();
        let normalize = |c: usize| color_labels.binary_search(&c).expect("label collected above");
        for e in &mut edges {
            e.color_at_u = normalize(e.color_at_u);
            e.color_at_v = normalize(e.color_at_v);
        }
        Ok(ExperimentGraph { vertex_count, edges, color_labels, index_base: 0 })
    }

    /// Same graph, displayed with vertex ids shifted by `base`.
    pub fn with_index_base(mut self, base: usize) -> Self {
        self.index_base = base;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[HalfColoredEdge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &HalfColoredEdge {
        &self.edges[idx]
    }

    /// Number of distinct colors `d`.
    pub fn color_count(&self) -> usize {
        self.color_labels.len()
    }

    pub fn color_labels(&self) -> &[usize] {
        &self.color_labels
    }

    pub fn color_label(&self, c: Color) -> usize {
        self.color_labels[c]
    }

    /// Normalized id of an original color label.
    pub fn color_of_label(&self, label: usize) -> Option<Color> {
        self.color_labels.binary_search(&label).ok()
    }

    pub fn index_base(&self) -> usize {
        self.index_base
    }

    /// The user-facing label of vertex `v`.
    pub fn vertex_label(&self, v: Vertex) -> usize {
        v + self.index_base
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by_key(&key, |e| e.pair()).ok()
    }

    /// `(index, edge)` for every edge incident on `v`, in edge order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (usize, &HalfColoredEdge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.touches(v))
    }

    /// `d(v, i)`; assumes `v` is in range.
    pub fn degree_of_color(&self, v: Vertex, color: Color) -> usize {
        self.edges.iter().filter(|e| e.color_at(v) == Some(color)).count()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::Input(format!("vertex {v} out of range 0..{}", self.vertex_count)));
        }
        Ok(())
    }

    /// Rebuilds a graph over the same vertex set from edges carrying this
    /// graph's normalized colors. Colors that no longer occur are dropped.
    pub fn rebuild(&self, edges: impl IntoIterator<Item = HalfColoredEdge>) -> Result<Self> {
        let relabeled = edges.into_iter().map(|mut e| {
            e.color_at_u = self.color_labels[e.color_at_u];
            e.color_at_v = self.color_labels[e.color_at_v];
            e
        });
        Ok(ExperimentGraph::new(self.vertex_count, relabeled)?.with_index_base(self.index_base))
    }

    /// The graph without the edges at the given indices.
    pub fn without_edges(&self, removed: &[usize]) -> Self {
        let removed: BTreeSet<usize> = removed.iter().copied().collect();
        let kept = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| !removed.contains(k))
            .map(|(_, e)| e.clone());
        self.rebuild(kept).expect("subgraph of a well-formed graph is well-formed")
    }

    /// Renders an induced vertex coloring with the original color labels.
    pub fn render_coloring(&self, vc: &VertexColoring) -> String {
        let labels: Vec<usize> = vc.colors.iter().map(|&c| self.color_labels[c]).collect();
        render_labels(&labels)
    }

    pub fn ket(&self, vc: &VertexColoring) -> String {
        format!("|{}\u{27e9}", self.render_coloring(vc))
    }

    pub fn edge_label(&self, e: &HalfColoredEdge) -> String {
        format!("{{{},{}}}", self.vertex_label(e.u), self.vertex_label(e.v))
    }
}

fn render_labels(labels: &[usize]) -> String {
    if labels.iter().all(|&c| c < 10) {
        labels.iter().map(|c| c.to_string()).collect()
    } else {
        labels.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `d(u, i)`: number of edges at `v` whose half at `v` has color `i`.
pub fn color_degree(g: &ExperimentGraph, v: Vertex, i: Color) -> Result<usize> {
    g.check_vertex(v)?;
    Ok(g.degree_of_color(v, i))
}

/// `G[S]`. Vertices of `s` are renumbered `0..|s|` in increasing order; the
/// returned map sends each new vertex to its old id.
pub fn induced_subgraph(g: &ExperimentGraph, s: &[Vertex]) -> Result<(ExperimentGraph, Vec<Vertex>)> {
    let set: BTreeSet<Vertex> = s.iter().copied().collect();
    for &v in &set {
        g.check_vertex(v)?;
    }
    let old_of_new: Vec<Vertex> = set.iter().copied().collect();
    let new_of_old = |v: Vertex| old_of_new.binary_search(&v).ok();
    let edges = g.edges().iter().filter_map(|e| {
        let (a, b) = (new_of_old(e.u)?, new_of_old(e.v)?);
        Some(HalfColoredEdge::new(
            a,
            b,
            g.color_label(e.color_at_u),
            g.color_label(e.color_at_v),
            e.weight.clone(),
        ))
    });
    let sub = ExperimentGraph::new(old_of_new.len(), edges)?.with_index_base(g.index_base());
    Ok((sub, old_of_new))
}

/// A color per vertex, normalized color ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexColoring {
    pub colors: Vec<Color>,
}

impl VertexColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        VertexColoring { colors }
    }

    pub fn monochromatic(n: usize, color: Color) -> Self {
        VertexColoring { colors: vec![color; n] }
    }

    pub fn is_monochromatic(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    /// The common color of a monochromatic coloring on at least one vertex.
    pub fn mono_color(&self) -> Option<Color> {
        match self.colors.first() {
            Some(&c) if self.is_monochromatic() => Some(c),
            _ => None,
        }
    }

    pub fn uses(&self, color: Color) -> bool {
        self.colors.contains(&color)
    }

    /// `|c0c1...⟩` with normalized ids.
    pub fn ket(&self) -> String {
        format!("|{self}\u{27e9}")
    }
}

impl fmt::Display for VertexColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_labels(&self.colors))
    }
}
