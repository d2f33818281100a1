//! Edge pruning that keeps a valid graph valid with the same dimension.
//!
//! Three rules:
//!
//! * **infeasible color**: if the monochromatic coloring of color `i` is not
//!   induced by any perfect matching, every edge with a half colored `i` can
//!   go.
//! * **matching covered**: an edge in no perfect matching is redundant.
//! * **color isolated**: if a monochromatic edge `e = {u, v}` has
//!   `d(u, c(e)) = 1` but `d(v, c(e)) ≥ 2`, every other edge with color
//!   `c(e)` at `v` can go. Afterwards such an `e` is color isolated.
//!
//! [`prune_to_fixpoint`] applies them round-robin until nothing changes.
//! The result is smaller but not certified edge minimum.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Color, ExperimentGraph, HalfColoredEdge, Vertex};
use crate::matching::{enumerate_perfect_matchings, weight_table};
use crate::validity::{require_valid, verify};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    InfeasibleColor,
    MatchingCovered,
    ColorIsolated,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::InfeasibleColor => "infeasible-color",
            Rule::MatchingCovered => "matching-covered",
            Rule::ColorIsolated => "color-isolated",
        }
    }
}

/// Why a batch of edges was removed. Colors are original labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// The edges lie in no perfect matching.
    NotInAnyPerfectMatching,
    /// No perfect matching induces the all-`color` coloring.
    InfeasibleColor { color: usize },
    /// `anchor` is monochromatic of `color`, the only `color` half at
    /// `lonely_end`; the removed edges carried `color` at `shared_end`.
    ColorIsolated { anchor: (Vertex, Vertex), lonely_end: Vertex, shared_end: Vertex, color: usize },
}

/// One removal batch. `removed` carries original color labels so that it
/// stays meaningful when a color disappears from the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneStep {
    pub rule: Rule,
    pub removed: Vec<HalfColoredEdge>,
    pub justification: Justification,
    pub edges_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PruneTrace {
    pub steps: Vec<PruneStep>,
}

impl PruneTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn removed_edge_count(&self) -> usize {
        self.steps.iter().map(|s| s.removed.len()).sum()
    }

    fn extend(&mut self, other: PruneTrace) {
        self.steps.extend(other.steps);
    }

    /// Every graph along the trace, starting with `input`.
    pub fn replay_states(&self, input: &ExperimentGraph) -> Result<Vec<ExperimentGraph>> {
        let mut states = vec![input.clone()];
        for (k, step) in self.steps.iter().enumerate() {
            let current = states.last().expect("non-empty");
            let mut idx = Vec::with_capacity(step.removed.len());
            for e in &step.removed {
                let found = current.edge_index(e.u, e.v).filter(|&i| {
                    let have = current.edge(i);
                    current.color_label(have.color_at_u) == e.color_at_u
                        && current.color_label(have.color_at_v) == e.color_at_v
                        && have.weight == e.weight
                });
                match found {
                    Some(i) => idx.push(i),
                    None => {
                        return Err(Error::Input(format!("trace step {k}: edge {{{}, {}}} not present", e.u, e.v)))
                    }
                }
            }
            let next = current.without_edges(&idx);
            if next.edge_count() != step.edges_after {
                return Err(Error::Input(format!("trace step {k}: edge count mismatch")));
            }
            states.push(next);
        }
        Ok(states)
    }

    /// The graph obtained by applying every step to `input`.
    pub fn replay(&self, input: &ExperimentGraph) -> Result<ExperimentGraph> {
        Ok(self.replay_states(input)?.pop().expect("non-empty"))
    }

    pub fn to_json(&self, g: &ExperimentGraph) -> Value {
        let edge_json = |e: &HalfColoredEdge| {
            json!({
                "u": g.vertex_label(e.u),
                "v": g.vertex_label(e.v),
                "cu": e.color_at_u,
                "cv": e.color_at_v,
                "w": crate::io::weight_to_json(&e.weight),
            })
        };
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let why = match &s.justification {
                    Justification::NotInAnyPerfectMatching => json!({"kind": "not-in-any-perfect-matching"}),
                    Justification::InfeasibleColor { color } => json!({"kind": "infeasible-color", "color": color}),
                    Justification::ColorIsolated { anchor, lonely_end, shared_end, color } => json!({
                        "kind": "color-isolated",
                        "anchor": [g.vertex_label(anchor.0), g.vertex_label(anchor.1)],
                        "lonely_end": g.vertex_label(*lonely_end),
                        "shared_end": g.vertex_label(*shared_end),
                        "color": color,
                    }),
                };
                json!({
                    "rule": s.rule.name(),
                    "removed": s.removed.iter().map(edge_json).collect::<Vec<_>>(),
                    "justification": why,
                    "edges_after": s.edges_after,
                })
            })
            .collect();
        json!({ "steps": steps })
    }
}

fn labeled(g: &ExperimentGraph, idx: &[usize]) -> Vec<HalfColoredEdge> {
    idx.iter()
        .map(|&k| {
            let e = g.edge(k);
            HalfColoredEdge {
                color_at_u: g.color_label(e.color_at_u),
                color_at_v: g.color_label(e.color_at_v),
                ..e.clone()
            }
        })
        .collect()
}

fn apply(
    g: &ExperimentGraph,
    idx: &[usize],
    rule: Rule,
    justification: Justification,
) -> (ExperimentGraph, PruneStep) {
    let next = g.without_edges(idx);
    let step = PruneStep { rule, removed: labeled(g, idx), justification, edges_after: next.edge_count() };
    (next, step)
}

/// Removes every edge contained in no perfect matching. The weight table is
/// unchanged.
pub fn matching_covered_reduction(g: &ExperimentGraph) -> Result<(ExperimentGraph, PruneTrace)> {
    let mut used = vec![false; g.edge_count()];
    for p in enumerate_perfect_matchings(g)? {
        for k in p.edges {
            used[k] = true;
        }
    }
    let redundant: Vec<usize> = (0..g.edge_count()).filter(|&k| !used[k]).collect();
    if redundant.is_empty() {
        return Ok((g.clone(), PruneTrace::default()));
    }
    let (next, step) = apply(g, &redundant, Rule::MatchingCovered, Justification::NotInAnyPerfectMatching);
    Ok((next, PruneTrace { steps: vec![step] }))
}

/// Removes every edge with a half colored `i`, for each color `i` whose
/// monochromatic coloring is infeasible. One step per such color.
pub fn infeasible_color_prune(g: &ExperimentGraph) -> Result<(ExperimentGraph, PruneTrace)> {
    let table = weight_table(g)?;
    let n = g.vertex_count();
    let mut trace = PruneTrace::default();
    let mut current = g.clone();
    for color in 0..g.color_count() {
        if table.is_mono_feasible(n, color) {
            continue;
        }
        let label = g.color_label(color);
        // colors renumber as they vanish, so look the label up again
        let Some(c) = current.color_of_label(label) else { continue };
        let idx: Vec<usize> = current
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.color_at_u == c || e.color_at_v == c)
            .map(|(k, _)| k)
            .collect();
        let (next, step) = apply(&current, &idx, Rule::InfeasibleColor, Justification::InfeasibleColor { color: label });
        trace.steps.push(step);
        current = next;
    }
    Ok((current, trace))
}

/// Indices of the monochromatic edges `e = {u, v}` with
/// `d(u, c(e)) = d(v, c(e)) = 1`.
pub fn find_color_isolated_edges(g: &ExperimentGraph) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| match e.color() {
            Some(c) => g.degree_of_color(e.u, c) == 1 && g.degree_of_color(e.v, c) == 1,
            None => false,
        })
        .map(|(k, _)| k)
        .collect()
}

/// For a monochromatic edge with color degree 1 at exactly one end,
/// returns `(lonely_end, shared_end, color)`.
fn lonely_and_shared(g: &ExperimentGraph, e: &HalfColoredEdge) -> Option<(Vertex, Vertex, Color)> {
    let c = e.color()?;
    let (du, dv) = (g.degree_of_color(e.u, c), g.degree_of_color(e.v, c));
    if du == 1 && dv >= 2 {
        Some((e.u, e.v, c))
    } else if dv == 1 && du >= 2 {
        Some((e.v, e.u, c))
    } else {
        None
    }
}

/// One application of the color-isolated rule anchored at edge `anchor`.
/// `None` if the anchor does not satisfy the rule's hypothesis.
pub fn color_isolated_step(g: &ExperimentGraph, anchor: usize) -> Option<(ExperimentGraph, PruneStep)> {
    let e = g.edges().get(anchor)?;
    let (lonely, shared, c) = lonely_and_shared(g, e)?;
    let idx: Vec<usize> = g
        .incident(shared)
        .filter(|&(k, f)| k != anchor && f.color_at(shared) == Some(c))
        .map(|(k, _)| k)
        .collect();
    let why = Justification::ColorIsolated {
        anchor: e.pair(),
        lonely_end: lonely,
        shared_end: shared,
        color: g.color_label(c),
    };
    Some(apply(g, &idx, Rule::ColorIsolated, why))
}

/// Controls the runtime re-verification done by [`color_isolated_prune`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Paranoia {
    /// Re-verify when the graph has at most 10 vertices.
    #[default]
    Auto,
    Always,
    Never,
}

impl Paranoia {
    fn enabled(self, n: usize) -> bool {
        match self {
            Paranoia::Auto => n <= 10,
            Paranoia::Always => true,
            Paranoia::Never => false,
        }
    }
}

/// Applies the color-isolated rule until no edge satisfies its hypothesis,
/// always anchoring at the first such edge in edge order. Requires a valid
/// input.
pub fn color_isolated_prune(g: &ExperimentGraph) -> Result<(ExperimentGraph, PruneTrace)> {
    color_isolated_prune_with(g, Paranoia::Auto)
}

pub fn color_isolated_prune_with(g: &ExperimentGraph, paranoia: Paranoia) -> Result<(ExperimentGraph, PruneTrace)> {
    let verdict = require_valid(g)?;
    color_isolated_valid(g, verdict.mu, paranoia)
}

fn color_isolated_valid(g: &ExperimentGraph, mu: usize, paranoia: Paranoia) -> Result<(ExperimentGraph, PruneTrace)> {
    let check = paranoia.enabled(g.vertex_count());
    let mut current = g.clone();
    let mut trace = PruneTrace::default();
    for _ in 0..=g.edge_count() {
        let next = (0..current.edge_count()).find_map(|k| color_isolated_step(&current, k));
        let Some((next, step)) = next else {
            return Ok((current, trace));
        };
        if check {
            let v = verify(&next)?;
            if !v.is_valid || v.mu != mu {
                return Err(Error::Internal(format!(
                    "color-isolated removal of {} edge(s) around {:?} changed validity/dimension (valid={}, mu {} -> {})",
                    step.removed.len(),
                    step.justification,
                    v.is_valid,
                    mu,
                    v.mu
                )));
            }
        }
        trace.steps.push(step);
        current = next;
    }
    Err(Error::Internal("color-isolated pruning did not terminate".into()))
}

/// Round-robin (infeasible color, matching covered, color isolated) until a
/// full round removes nothing. Input must be valid; the output is valid with
/// the same dimension.
pub fn prune_to_fixpoint(g: &ExperimentGraph) -> Result<(ExperimentGraph, PruneTrace)> {
    prune_to_fixpoint_with(g, Paranoia::Auto)
}

pub fn prune_to_fixpoint_with(g: &ExperimentGraph, paranoia: Paranoia) -> Result<(ExperimentGraph, PruneTrace)> {
    let verdict = require_valid(g)?;
    let mut current = g.clone();
    let mut trace = PruneTrace::default();
    for _ in 0..=g.edge_count() {
        let before = trace.len();
        let (next, t) = infeasible_color_prune(&current)?;
        trace.extend(t);
        let (next, t) = matching_covered_reduction(&next)?;
        trace.extend(t);
        let (next, t) = color_isolated_valid(&next, verdict.mu, paranoia)?;
        trace.extend(t);
        current = next;
        if trace.len() == before {
            let end = verify(&current)?;
            if !end.is_valid || end.mu != verdict.mu {
                return Err(Error::Internal("pruning changed validity or dimension".into()));
            }
            return Ok((current, trace));
        }
    }
    Err(Error::Internal(format!("no fixpoint after {} rounds", g.edge_count() + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::fixtures::{self, GREEN, RED};
    use crate::gaussian::GaussianRational;
    use crate::matching::weight_table;

    fn pairs(g: &ExperimentGraph, idx: &[usize]) -> Vec<(usize, usize)> {
        idx.iter().map(|&k| (g.vertex_label(g.edge(k).u), g.vertex_label(g.edge(k).v))).collect()
    }

    fn removed_pairs(trace: &PruneTrace) -> Vec<(usize, usize)> {
        trace.steps.iter().flat_map(|s| s.removed.iter().map(|e| (e.u + 1, e.v + 1))).collect()
    }

    #[test]
    fn path_loses_middle_edge() {
        let g = fixtures::path4();
        let (h, trace) = matching_covered_reduction(&g).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.edge_index(1, 2).is_none());
        assert_eq!(trace.steps[0].rule, Rule::MatchingCovered);
        assert_eq!(weight_table(&g).unwrap(), weight_table(&h).unwrap());
    }

    #[test]
    fn fig1_is_matching_covered() {
        let g = fixtures::fig1();
        let (h, trace) = matching_covered_reduction(&g).unwrap();
        assert_eq!(h, g);
        assert!(trace.is_empty());
    }

    #[test]
    fn no_perfect_matching_removes_everything() {
        let one = GaussianRational::from(1);
        let g = ExperimentGraph::new(
            4,
            [HalfColoredEdge::mono(0, 1, 0, one.clone()), HalfColoredEdge::mono(0, 2, 0, one.clone()), HalfColoredEdge::mono(0, 3, 1, one)],
        )
        .unwrap();
        let (h, trace) = matching_covered_reduction(&g).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(trace.removed_edge_count(), 3);
    }

    #[test]
    fn stray_color_is_pruned() {
        let g = fixtures::fig1();
        let mut edges: Vec<HalfColoredEdge> = g
            .edges()
            .iter()
            .map(|e| HalfColoredEdge { color_at_u: g.color_label(e.color_at_u), color_at_v: g.color_label(e.color_at_v), ..e.clone() })
            .collect();
        edges.push(HalfColoredEdge::mono(0, 2, 2, GaussianRational::from(1)));
        let stray = ExperimentGraph::new(6, edges).unwrap().with_index_base(1);
        let (h, trace) = infeasible_color_prune(&stray).unwrap();
        assert_eq!(h, g);
        assert_eq!(removed_pairs(&trace), vec![(1, 3)]);
        assert_eq!(trace.steps[0].justification, Justification::InfeasibleColor { color: 2 });

        let (h, trace) = infeasible_color_prune(&g).unwrap();
        assert_eq!(h, g);
        assert!(trace.is_empty());
        let (h, _) = infeasible_color_prune(&fixtures::single_edge()).unwrap();
        assert_eq!(h, fixtures::single_edge());
    }

    #[test]
    fn isolated_edges() {
        let g = fixtures::fig1();
        assert_eq!(pairs(&g, &find_color_isolated_edges(&g)), vec![(1, 2), (1, 6), (2, 3)]);
        let c6 = fixtures::c6_alternating();
        assert_eq!(find_color_isolated_edges(&c6).len(), 6);
        let bi = ExperimentGraph::new(2, [HalfColoredEdge::new(0, 1, 0, 1, GaussianRational::from(1))]).unwrap();
        assert!(find_color_isolated_edges(&bi).is_empty());
    }

    #[test]
    fn single_color_isolated_step_on_fig1() {
        let g = fixtures::fig1();
        let anchor = g.edge_index(2, 3).unwrap(); // {3,4}
        let (h, step) = color_isolated_step(&g, anchor).unwrap();
        let mut removed: Vec<(usize, usize)> = step.removed.iter().map(|e| (e.u + 1, e.v + 1)).collect();
        removed.sort();
        assert_eq!(removed, vec![(3, 5), (3, 6)]);
        assert_eq!(h.edge_count(), 7);
        let v = verify(&h).unwrap();
        assert!(v.is_valid);
        assert_eq!(v.mu, 2);
        // {1,2} is already isolated
        assert!(color_isolated_step(&g, g.edge_index(0, 1).unwrap()).is_none());
    }

    #[test]
    fn color_isolated_prune_examples() {
        let (h, trace) = color_isolated_prune(&fixtures::fig1()).unwrap();
        assert_eq!(removed_pairs(&trace), vec![(3, 5), (3, 6), (4, 6)]);
        assert_eq!(h, fixtures::c6_alternating());

        let c6 = fixtures::c6_alternating();
        let (h, trace) = color_isolated_prune(&c6).unwrap();
        assert_eq!(h, c6);
        assert!(trace.is_empty());
        let (h, _) = color_isolated_prune(&fixtures::single_edge()).unwrap();
        assert_eq!(h, fixtures::single_edge());

        assert!(matches!(color_isolated_prune(&fixtures::fig1_broken()), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn fixpoint_examples() {
        let g = fixtures::fig1();
        let (h, trace) = prune_to_fixpoint(&g).unwrap();
        assert_eq!(h.edge_count(), 6);
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&fixtures::c6_alternating()).unwrap());
        assert_eq!(trace.replay(&g).unwrap(), h);
        for state in trace.replay_states(&g).unwrap() {
            let v = verify(&state).unwrap();
            assert!(v.is_valid && v.mu == 2);
        }
        let mono: Vec<usize> = h.edges().iter().filter_map(|e| e.color()).collect();
        assert_eq!(mono.iter().filter(|&&c| c == GREEN).count(), 3);
        assert_eq!(mono.iter().filter(|&&c| c == RED).count(), 3);

        let k4 = fixtures::k4_three_colored();
        let (h, trace) = prune_to_fixpoint(&k4).unwrap();
        assert_eq!(h, k4);
        assert!(trace.is_empty());

        let c6 = fixtures::c6_alternating();
        let (h, trace) = prune_to_fixpoint(&c6).unwrap();
        assert_eq!(h, c6);
        assert!(trace.is_empty());
    }

    #[test]
    fn fixpoint_is_idempotent() {
        let (once, _) = prune_to_fixpoint(&fixtures::fig1()).unwrap();
        let (twice, trace) = prune_to_fixpoint(&once).unwrap();
        assert_eq!(once, twice);
        assert!(trace.is_empty());
    }

    #[test]
    fn replay_rejects_foreign_trace() {
        let g = fixtures::fig1();
        let (_, trace) = prune_to_fixpoint(&g).unwrap();
        assert!(trace.replay(&fixtures::c6_alternating()).is_err());
    }

    #[test]
    fn trace_json_names_rules() {
        let g = fixtures::fig1();
        let (_, trace) = prune_to_fixpoint(&g).unwrap();
        let json = trace.to_json(&g);
        assert_eq!(json["steps"][0]["rule"], "color-isolated");
        assert_eq!(json["steps"][0]["justification"]["anchor"], serde_json::json!([3, 4]));
    }
}
