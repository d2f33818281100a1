//! Validity, dimension and the published dimension bounds.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::{Color, ExperimentGraph, Vertex, VertexColoring};
use crate::matching::{enumerate_perfect_matchings, weight_table, WeightTable};

/// Outcome of [`verify`].
///
/// A graph with no feasible monochromatic coloring (in particular one with
/// no perfect matching at all) is valid with `mu = 0` and `vacuous = true`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_valid: bool,
    /// Number of feasible monochromatic colorings of weight exactly 1.
    pub mu: usize,
    /// Every feasible coloring whose weight is wrong: monochromatic ones
    /// must weigh 1, all others 0.
    pub violations: Vec<(VertexColoring, GaussianRational)>,
    pub feasible_mono_colors: BTreeSet<Color>,
    pub vacuous: bool,
    pub matching_count: usize,
    /// Number of colors occurring on some half-edge. Reported alongside
    /// `mu`; the two differ when a color never forms a feasible
    /// monochromatic coloring.
    pub color_class_count: usize,
}

impl Verdict {
    pub fn to_json(&self, g: &ExperimentGraph) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|(vc, w)| json!({"coloring": g.render_coloring(vc), "weight": crate::io::weight_to_json(w)}))
            .collect();
        let mono: Vec<usize> = self.feasible_mono_colors.iter().map(|&c| g.color_label(c)).collect();
        json!({
            "valid": self.is_valid,
            "mu": self.mu,
            "vacuous": self.vacuous,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "perfect_matchings": self.matching_count,
            "color_classes": self.color_class_count,
            "feasible_mono_colors": mono,
            "violations": violations,
        })
    }
}

/// Judges a precomputed weight table.
pub fn verdict_from_table(g: &ExperimentGraph, table: &WeightTable) -> Verdict {
    let mut violations = Vec::new();
    let mut feasible_mono_colors = BTreeSet::new();
    let mut mu = 0;
    for (vc, entry) in table.iter() {
        let ok = if vc.is_monochromatic() {
            if let Some(c) = vc.mono_color() {
                feasible_mono_colors.insert(c);
                if entry.weight.is_one() {
                    mu += 1;
                }
            }
            entry.weight.is_one()
        } else {
            entry.weight.is_zero()
        };
        if !ok {
            violations.push((vc.clone(), entry.weight.clone()));
        }
    }
    Verdict {
        is_valid: violations.is_empty(),
        mu,
        vacuous: feasible_mono_colors.is_empty(),
        violations,
        feasible_mono_colors,
        matching_count: table.total_matchings(),
        color_class_count: g.color_count(),
    }
}

/// Decides validity: every feasible monochromatic coloring has weight 1
/// and every other feasible coloring weight 0.
pub fn verify(g: &ExperimentGraph) -> Result<Verdict> {
    Ok(verdict_from_table(g, &weight_table(g)?))
}

/// `verify`, failing with [`Error::InvalidGraph`] unless the graph is valid.
pub fn require_valid(g: &ExperimentGraph) -> Result<Verdict> {
    let verdict = verify(g)?;
    if !verdict.is_valid {
        return Err(Error::InvalidGraph(Box::new(verdict)));
    }
    Ok(verdict)
}

/// `μ(G)` of a valid graph.
pub fn dimension(g: &ExperimentGraph) -> Result<usize> {
    Ok(require_valid(g)?.mu)
}

/// `μ` against `n/√2` and `n/2`, as exact integer comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub mu: usize,
    /// `2μ²`
    pub two_mu_squared: u128,
    /// `n²`
    pub n_squared: u128,
    /// `2μ² ≤ n²`, i.e. `μ ≤ n/√2`.
    pub sqrt2_bound_holds: bool,
    /// `2μ`
    pub two_mu: u128,
    /// `2μ < n`, i.e. `μ < n/2`.
    pub half_bound_holds: bool,
    /// Both bounds are only claimed for `n > 4`.
    pub bounds_apply: bool,
    pub is_counterexample_thm: bool,
    pub is_counterexample_conj: bool,
}

impl DimensionReport {
    pub fn new(n: usize, mu: usize) -> Self {
        let (n_w, mu_w) = (n as u128, mu as u128);
        let two_mu_squared = 2 * mu_w * mu_w;
        let n_squared = n_w * n_w;
        let sqrt2_bound_holds = two_mu_squared <= n_squared;
        let half_bound_holds = 2 * mu_w < n_w;
        let bounds_apply = n > 4;
        DimensionReport {
            n,
            mu,
            two_mu_squared,
            n_squared,
            sqrt2_bound_holds,
            two_mu: 2 * mu_w,
            half_bound_holds,
            bounds_apply,
            is_counterexample_thm: bounds_apply && !sqrt2_bound_holds,
            is_counterexample_conj: bounds_apply && !half_bound_holds,
        }
    }
}

pub fn bound_report(g: &ExperimentGraph) -> Result<DimensionReport> {
    Ok(DimensionReport::new(g.vertex_count(), dimension(g)?))
}

/// Pairs `(v, i)` such that color `i` occurs somewhere in the graph but no
/// monochromatic edge of color `i` touches `v`. Empty on every valid graph
/// whose colors all form feasible monochromatic colorings.
pub fn check_monoedge_property(g: &ExperimentGraph) -> Vec<(Vertex, Color)> {
    let mut has = vec![vec![false; g.color_count()]; g.vertex_count()];
    for e in g.edges() {
        if let Some(c) = e.color() {
            has[e.u][c] = true;
            has[e.v][c] = true;
        }
    }
    let mut failures = Vec::new();
    for (v, row) in has.iter().enumerate() {
        for (c, &ok) in row.iter().enumerate() {
            if !ok {
                failures.push((v, c));
            }
        }
    }
    failures
}

/// Verdict for graphs with floating-point weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxVerdict {
    pub is_valid: bool,
    pub mu: usize,
    pub violations: Vec<(VertexColoring, Complex64)>,
    pub feasible_mono_colors: BTreeSet<Color>,
    pub vacuous: bool,
    pub matching_count: usize,
    pub eps: f64,
}

impl ApproxVerdict {
    pub fn to_json(&self, g: &ExperimentGraph) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|(vc, w)| json!({"coloring": g.render_coloring(vc), "weight": {"re": w.re, "im": w.im}}))
            .collect();
        let mono: Vec<usize> = self.feasible_mono_colors.iter().map(|&c| g.color_label(c)).collect();
        json!({
            "valid": self.is_valid,
            "mu": self.mu,
            "vacuous": self.vacuous,
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "perfect_matchings": self.matching_count,
            "feasible_mono_colors": mono,
            "eps": self.eps,
            "violations": violations,
        })
    }
}

/// Validity with tolerance: weights are compared to 1 and 0 within `eps`
/// in modulus. `weights[k]` is the weight of `g.edges()[k]`.
pub fn verify_approx(g: &ExperimentGraph, weights: &[Complex64], eps: f64) -> Result<ApproxVerdict> {
    if weights.len() != g.edge_count() {
        return Err(Error::Input(format!("{} weights for {} edges", weights.len(), g.edge_count())));
    }
    let matchings = enumerate_perfect_matchings(g)?;
    let mut sums: BTreeMap<VertexColoring, Complex64> = BTreeMap::new();
    for (vc, members) in crate::matching::group_by_coloring(g, &matchings) {
        let total = members
            .iter()
            .map(|&k| matchings[k].edges.iter().map(|&e| weights[e]).product::<Complex64>())
            .sum();
        sums.insert(vc, total);
    }
    let mut violations = Vec::new();
    let mut feasible_mono_colors = BTreeSet::new();
    let mut mu = 0;
    let one = Complex64::new(1.0, 0.0);
    for (vc, w) in sums {
        let ok = match vc.mono_color() {
            Some(c) => {
                feasible_mono_colors.insert(c);
                let ok = (w - one).norm() <= eps;
                mu += usize::from(ok);
                ok
            }
            None if vc.is_monochromatic() => (w - one).norm() <= eps,
            None => w.norm() <= eps,
        };
        if !ok {
            violations.push((vc, w));
        }
    }
    Ok(ApproxVerdict {
        is_valid: violations.is_empty(),
        mu,
        vacuous: feasible_mono_colors.is_empty(),
        violations,
        feasible_mono_colors,
        matching_count: matchings.len(),
        eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, GREEN, RED};
    use crate::graph::HalfColoredEdge;

    #[test]
    fn fig1_is_valid_dimension_two() {
        let v = verify(&fixtures::fig1()).unwrap();
        assert!(v.is_valid);
        assert_eq!(v.mu, 2);
        assert!(!v.vacuous);
        assert_eq!(v.feasible_mono_colors, BTreeSet::from([RED, GREEN]));
        assert_eq!(dimension(&fixtures::fig1()).unwrap(), 2);
    }

    #[test]
    fn k4_is_valid_dimension_three() {
        let v = verify(&fixtures::k4_three_colored()).unwrap();
        assert!(v.is_valid);
        assert_eq!(v.mu, 3);
        assert_eq!(dimension(&fixtures::single_edge()).unwrap(), 1);
    }

    #[test]
    fn broken_fig1_reports_the_mixed_coloring() {
        let g = fixtures::fig1_broken();
        let v = verify(&g).unwrap();
        assert!(!v.is_valid);
        assert_eq!(v.violations.len(), 1);
        let (vc, w) = &v.violations[0];
        assert_eq!(g.render_coloring(vc), "111001");
        // pm3 contributes 1, pm4 = {1,2},{3,5},{4,6} now contributes 1*1*i
        assert_eq!(*w, GaussianRational::from_integers(1, 1));
        assert!(matches!(dimension(&g), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn vacuous_graphs() {
        let g = ExperimentGraph::new(2, []).unwrap();
        let v = verify(&g).unwrap();
        assert!(v.is_valid && v.vacuous);
        assert_eq!(v.mu, 0);
    }

    #[test]
    fn bounds() {
        let r = DimensionReport::new(6, 2);
        assert_eq!((r.two_mu_squared, r.n_squared), (8, 36));
        assert!(r.sqrt2_bound_holds && r.half_bound_holds);
        assert!(!r.is_counterexample_thm && !r.is_counterexample_conj);

        let r = bound_report(&fixtures::k4_three_colored()).unwrap();
        assert!(!r.bounds_apply);
        assert!(!r.sqrt2_bound_holds);
        assert!(!r.is_counterexample_thm && !r.is_counterexample_conj);

        let r = DimensionReport::new(6, 5);
        assert!(r.is_counterexample_thm && r.is_counterexample_conj);
        // 2*9 <= 36 but 6 >= 6
        let r = DimensionReport::new(6, 3);
        assert!(!r.is_counterexample_thm && r.is_counterexample_conj);
    }

    #[test]
    fn monoedge_property() {
        assert!(check_monoedge_property(&fixtures::fig1()).is_empty());
        assert!(check_monoedge_property(&fixtures::k4_three_colored()).is_empty());

        let g = fixtures::fig1();
        let k = g.edge_index(4, 5).unwrap();
        let cut = g.without_edges(&[k]);
        // vertex 5 (1-based) lost its only green monochromatic edge
        assert_eq!(check_monoedge_property(&cut), vec![(4, GREEN)]);
    }

    #[test]
    fn relabeling_does_not_change_verdict() {
        let g = fixtures::fig1();
        let perm = [3usize, 5, 0, 1, 4, 2];
        let edges: Vec<HalfColoredEdge> = g
            .edges()
            .iter()
            .map(|e| HalfColoredEdge::new(perm[e.u], perm[e.v], 1 - e.color_at_u, 1 - e.color_at_v, e.weight.clone()))
            .collect();
        let h = ExperimentGraph::new(6, edges).unwrap();
        let (a, b) = (verify(&g).unwrap(), verify(&h).unwrap());
        assert_eq!((a.is_valid, a.mu, a.matching_count), (b.is_valid, b.mu, b.matching_count));
    }

    #[test]
    fn approximate_mode() {
        let g = fixtures::fig1();
        let mut w: Vec<Complex64> = g.edges().iter().map(|e| e.weight.to_complex64()).collect();
        let v = verify_approx(&g, &w, 1e-9).unwrap();
        assert!(v.is_valid);
        assert_eq!(v.mu, 2);
        w[0] *= Complex64::new(1.0 + 1e-12, 0.0);
        assert!(verify_approx(&g, &w, 1e-9).unwrap().is_valid);
        w[0] = Complex64::new(1.1, 0.0);
        assert!(!verify_approx(&g, &w, 1e-9).unwrap().is_valid);
    }
}
