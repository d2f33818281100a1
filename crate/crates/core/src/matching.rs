//! Perfect matching enumeration and the weight of every induced vertex coloring.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::{ExperimentGraph, Vertex, VertexColoring};

/// Default bound on how many perfect matchings may be materialized.
pub const DEFAULT_MATCHING_CAP: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_MATCHING_CAP`].
pub const MATCHING_CAP_ENV: &str = "XGRAPH_MATCHING_CAP";

/// The effective matching cap: `XGRAPH_MATCHING_CAP` if set and parseable,
/// otherwise the default.
pub fn matching_cap() -> usize {
    std::env::var(MATCHING_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MATCHING_CAP)
}

/// A perfect matching as the sorted indices of its edges in the parent graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
}

impl PerfectMatching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }
}

fn adjacency(g: &ExperimentGraph) -> Vec<Vec<(usize, Vertex)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (k, e) in g.edges().iter().enumerate() {
        adj[e.u].push((k, e.v));
        adj[e.v].push((k, e.u));
    }
    adj
}

struct Enumerator<'a> {
    adj: &'a [Vec<(usize, Vertex)>],
    covered: Vec<bool>,
    current: Vec<usize>,
    out: Vec<PerfectMatching>,
    cap: usize,
}

impl Enumerator<'_> {
    fn run(&mut self, from: Vertex) -> Result<()> {
        let Some(v) = (from..self.covered.len()).find(|&v| !self.covered[v]) else {
            if self.out.len() >= self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            let mut edges = self.current.clone();
            edges.sort_unstable();
            self.out.push(PerfectMatching { edges });
            return Ok(());
        };
        self.covered[v] = true;
        for &(k, w) in &self.adj[v] {
            if self.covered[w] {
                continue;
            }
            self.covered[w] = true;
            self.current.push(k);
            let r = self.run(v + 1);
            self.current.pop();
            self.covered[w] = false;
            r?;
        }
        self.covered[v] = false;
        Ok(())
    }
}

/// All perfect matchings, sorted lexicographically by their edge-index sets.
/// Empty for odd vertex counts. Uses [`matching_cap`].
pub fn enumerate_perfect_matchings(g: &ExperimentGraph) -> Result<Vec<PerfectMatching>> {
    enumerate_perfect_matchings_with_cap(g, matching_cap())
}

pub fn enumerate_perfect_matchings_with_cap(g: &ExperimentGraph, cap: usize) -> Result<Vec<PerfectMatching>> {
    if g.vertex_count() % 2 == 1 {
        return Ok(Vec::new());
    }
    let adj = adjacency(g);
    let mut en = Enumerator {
        adj: &adj,
        covered: vec![false; g.vertex_count()],
        current: Vec::with_capacity(g.vertex_count() / 2),
        out: Vec::new(),
        cap,
    };
    en.run(0)?;
    let mut out = en.out;
    out.sort_unstable();
    Ok(out)
}

/// For each vertex, the index of the matching edge covering it.
fn cover(g: &ExperimentGraph, p: &PerfectMatching) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let mut by_vertex = vec![usize::MAX; n];
    for &k in &p.edges {
        if k >= g.edge_count() {
            return Err(Error::Input(format!("edge index {k} out of range")));
        }
        let e = g.edge(k);
        for x in [e.u, e.v] {
            if by_vertex[x] != usize::MAX {
                return Err(Error::Input(format!("vertex {x} covered twice; not a matching")));
            }
            by_vertex[x] = k;
        }
    }
    if let Some(x) = by_vertex.iter().position(|&k| k == usize::MAX) {
        return Err(Error::Input(format!("vertex {x} uncovered; not a perfect matching")));
    }
    Ok(by_vertex)
}

/// `w(P)`, the product of the edge weights.
pub fn matching_weight(g: &ExperimentGraph, p: &PerfectMatching) -> Result<GaussianRational> {
    cover(g, p)?;
    Ok(product_weight(g, p))
}

fn product_weight(g: &ExperimentGraph, p: &PerfectMatching) -> GaussianRational {
    p.edges.iter().fold(GaussianRational::one(), |mut acc, &k| {
        acc *= &g.edge(k).weight;
        acc
    })
}

/// The vertex coloring induced by `p`: each vertex takes the color of its
/// matched half-edge.
pub fn induced_coloring(g: &ExperimentGraph, p: &PerfectMatching) -> Result<VertexColoring> {
    let by_vertex = cover(g, p)?;
    Ok(coloring_from_cover(g, &by_vertex))
}

fn coloring_from_cover(g: &ExperimentGraph, by_vertex: &[usize]) -> VertexColoring {
    let colors = by_vertex
        .iter()
        .enumerate()
        .map(|(x, &k)| g.edge(k).color_at(x).expect("edge covers vertex"))
        .collect();
    VertexColoring::new(colors)
}

fn coloring_unchecked(g: &ExperimentGraph, p: &PerfectMatching) -> VertexColoring {
    let mut by_vertex = vec![0; g.vertex_count()];
    for &k in &p.edges {
        let e = g.edge(k);
        by_vertex[e.u] = k;
        by_vertex[e.v] = k;
    }
    coloring_from_cover(g, &by_vertex)
}

/// Groups matchings (given as produced by the enumerator) by the coloring
/// they induce. Values are indices into `matchings`, ascending.
pub fn group_by_coloring(
    g: &ExperimentGraph,
    matchings: &[PerfectMatching],
) -> BTreeMap<VertexColoring, Vec<usize>> {
    let mut groups: BTreeMap<VertexColoring, Vec<usize>> = BTreeMap::new();
    for (k, p) in matchings.iter().enumerate() {
        groups.entry(coloring_unchecked(g, p)).or_default().push(k);
    }
    groups
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub weight: GaussianRational,
    pub matching_count: usize,
}

/// `w(vc)` for every feasible coloring `vc`. Infeasible colorings are absent
/// and have weight zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightTable {
    entries: BTreeMap<VertexColoring, WeightEntry>,
}

impl WeightTable {
    pub fn from_matchings(g: &ExperimentGraph, matchings: &[PerfectMatching]) -> Self {
        let mut entries: BTreeMap<VertexColoring, WeightEntry> = BTreeMap::new();
        for p in matchings {
            let entry = entries
                .entry(coloring_unchecked(g, p))
                .or_insert_with(|| WeightEntry { weight: GaussianRational::zero(), matching_count: 0 });
            entry.weight += &product_weight(g, p);
            entry.matching_count += 1;
        }
        WeightTable { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, vc: &VertexColoring) -> Option<&WeightEntry> {
        self.entries.get(vc)
    }

    /// `w(vc)`, zero when infeasible.
    pub fn weight(&self, vc: &VertexColoring) -> GaussianRational {
        self.entries.get(vc).map(|e| e.weight.clone()).unwrap_or_else(GaussianRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexColoring, &WeightEntry)> {
        self.entries.iter()
    }

    pub fn total_matchings(&self) -> usize {
        self.entries.values().map(|e| e.matching_count).sum()
    }

    /// Colors whose monochromatic coloring is feasible, ascending.
    pub fn feasible_mono_colors(&self) -> Vec<usize> {
        self.entries.keys().filter_map(|vc| vc.mono_color()).collect()
    }

    pub fn is_mono_feasible(&self, n: usize, color: usize) -> bool {
        self.entries.contains_key(&VertexColoring::monochromatic(n, color))
    }

    /// JSON rows `{"coloring": "111001", "weight": {...}, "matchings": k}`.
    pub fn to_json(&self, g: &ExperimentGraph) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(vc, e)| {
                serde_json::json!({
                    "coloring": g.render_coloring(vc),
                    "weight": crate::io::weight_to_json(&e.weight),
                    "matchings": e.matching_count,
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// The full weight table of `g`. Uses [`matching_cap`].
pub fn weight_table(g: &ExperimentGraph) -> Result<WeightTable> {
    weight_table_with_cap(g, matching_cap())
}

pub fn weight_table_with_cap(g: &ExperimentGraph, cap: usize) -> Result<WeightTable> {
    let matchings = enumerate_perfect_matchings_with_cap(g, cap)?;
    Ok(WeightTable::from_matchings(g, &matchings))
}
