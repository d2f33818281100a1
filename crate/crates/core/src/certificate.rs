//! Runtime certificates for the structural inequalities behind `μ ≤ n/√2`.
//!
//! For a color `i` the vertices split into `R` (`d(v,i) = 1`) and `U`
//! (`d(v,i) ≥ 2`); the `i`-colored isolated edges form the matching `M`.
//! Picking an edge `{u,v}` of `M`, the representative sparse graph `χ` over
//! `R` collects, for each dimension color `j`, one monochromatic `j` edge at
//! `u` (resp. `v`) unless `u` (resp. `v`) already has its `j` half on an
//! edge into `U`.
//!
//! Every inequality is evaluated with integers only. Checks derived under
//! edge minimality are tagged [`Hypothesis::EdgeMinimum`]; they are expected
//! to hold after [`prune_to_fixpoint`](crate::sparsify::prune_to_fixpoint)
//! and may fail on unpruned graphs.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{Color, ExperimentGraph, Vertex};
use crate::sparsify::find_color_isolated_edges;
use crate::validity::require_valid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePartition {
    pub color: Color,
    /// Vertices with `d(v, color) = 1`, ascending.
    pub r: Vec<Vertex>,
    /// Vertices with `d(v, color) ≥ 2`, ascending.
    pub u: Vec<Vertex>,
    /// Edge indices of the `color`-colored isolated edges, ascending.
    pub isolated_matching: Vec<usize>,
    /// The dimension colors (feasible monochromatic colorings).
    pub dimension_colors: Vec<Color>,
}

impl SparsePartition {
    /// Computes `R`, `U` and `M` for `color` without any validity check.
    /// Fails if some vertex has no half-edge of `color`.
    pub fn compute(g: &ExperimentGraph, color: Color, dimension_colors: Vec<Color>) -> Result<Self> {
        let (mut r, mut u) = (Vec::new(), Vec::new());
        for x in 0..g.vertex_count() {
            match g.degree_of_color(x, color) {
                0 => {
                    return Err(Error::MonoedgeViolated(format!(
                        "vertex {} has no half-edge of color {}",
                        g.vertex_label(x),
                        g.color_label(color)
                    )))
                }
                1 => r.push(x),
                _ => u.push(x),
            }
        }
        let isolated_matching = find_color_isolated_edges(g)
            .into_iter()
            .filter(|&k| g.edge(k).color() == Some(color))
            .collect();
        Ok(SparsePartition { color, r, u, isolated_matching, dimension_colors })
    }

    /// Whether `M` is a perfect matching of `G[R]`. Isolated edges have
    /// both ends in `R` and are pairwise disjoint, so this is `2|M| = |R|`.
    pub fn matching_is_perfect_on_r(&self) -> bool {
        2 * self.isolated_matching.len() == self.r.len()
    }

    pub fn in_u(&self, x: Vertex) -> bool {
        self.u.binary_search(&x).is_ok()
    }

    pub fn in_r(&self, x: Vertex) -> bool {
        self.r.binary_search(&x).is_ok()
    }
}

fn dimension_colors(g: &ExperimentGraph) -> Result<Vec<Color>> {
    let verdict = require_valid(g)?;
    if verdict.vacuous {
        return Err(Error::Precondition("graph is vacuous (no feasible monochromatic coloring)".into()));
    }
    Ok(verdict.feasible_mono_colors.into_iter().collect())
}

/// `R`, `U` and the isolated matching for color `i` of a valid graph.
/// Fails unless the isolated matching perfectly matches `G[R]`.
pub fn partition_ru(g: &ExperimentGraph, color: Color) -> Result<SparsePartition> {
    let colors = dimension_colors(g)?;
    if !colors.contains(&color) {
        return Err(Error::Precondition(format!(
            "monochromatic coloring of color {} is not feasible",
            g.color_label(color)
        )));
    }
    let p = SparsePartition::compute(g, color, colors)?;
    if !p.matching_is_perfect_on_r() {
        return Err(Error::Precondition(format!(
            "color {}: {} isolated edges do not perfectly match |R| = {} (graph not pruned?)",
            g.color_label(color),
            p.isolated_matching.len(),
            p.r.len()
        )));
    }
    Ok(p)
}

/// The lexicographically smallest isolated edge.
pub fn select_base_edge(p: &SparsePartition) -> Result<usize> {
    p.isolated_matching
        .first()
        .copied()
        .ok_or_else(|| Error::Precondition("no isolated edge of the partition color".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeSparseGraph {
    pub base_edge: usize,
    /// Lower endpoint of the base edge.
    pub u: Vertex,
    pub v: Vertex,
    pub chi_u: Vec<usize>,
    pub chi_v: Vec<usize>,
    /// `chi_u ∪ chi_v`, ascending.
    pub chi: Vec<usize>,
}

fn chi_at(g: &ExperimentGraph, p: &SparsePartition, x: Vertex) -> Result<Vec<usize>> {
    let mut out = BTreeSet::new();
    for &j in &p.dimension_colors {
        let covered_by_u = g.incident(x).any(|(_, e)| e.color_at(x) == Some(j) && p.in_u(e.other(x).expect("incident")));
        if covered_by_u {
            continue;
        }
        let pick = g
            .incident(x)
            .filter(|(_, e)| e.color() == Some(j))
            .min_by_key(|(_, e)| e.other(x).expect("incident"))
            .map(|(k, _)| k);
        match pick {
            Some(k) => {
                out.insert(k);
            }
            None => {
                return Err(Error::MonoedgeViolated(format!(
                    "no monochromatic edge of color {} at vertex {}",
                    g.color_label(j),
                    g.vertex_label(x)
                )))
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Builds `χ_u`, `χ_v` and `χ` around `base`, choosing for each color the
/// monochromatic edge with the smallest other endpoint.
pub fn build_chi(g: &ExperimentGraph, p: &SparsePartition, base: usize) -> Result<RepresentativeSparseGraph> {
    if !p.isolated_matching.contains(&base) {
        return Err(Error::Precondition("base edge is not an isolated edge of the partition color".into()));
    }
    let (u, v) = g.edge(base).pair();
    let chi_u = chi_at(g, p, u)?;
    let chi_v = chi_at(g, p, v)?;
    let chi: Vec<usize> = chi_u.iter().chain(&chi_v).copied().collect::<BTreeSet<_>>().into_iter().collect();

    let shared: Vec<usize> = chi_u.iter().filter(|k| chi_v.contains(k)).copied().collect();
    if shared != [base] {
        return Err(Error::Internal(format!("chi_u ∩ chi_v = {shared:?}, expected only the base edge")));
    }
    for &k in &chi {
        let e = g.edge(k);
        if !(p.in_r(e.u) && p.in_r(e.v)) || !(e.touches(u) || e.touches(v)) {
            return Err(Error::Internal(format!("chi edge {} leaves R or misses the base", g.edge_label(e))));
        }
    }
    debug_assert_eq!(chi.len(), chi_u.len() + chi_v.len() - 1);
    Ok(RepresentativeSparseGraph { base_edge: base, u, v, chi_u, chi_v, chi })
}

/// Under which assumption a check is claimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    ValidSimple,
    EdgeMinimum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// The inequality with concrete integers substituted.
    pub statement: String,
    pub status: Status,
    pub hypothesis: Hypothesis,
    /// Original color label, for per-color checks.
    pub color: Option<usize>,
    /// Base edge as user-facing vertex labels, for χ checks.
    pub base_edge: Option<(usize, usize)>,
}

impl Check {
    fn new(name: &'static str, hypothesis: Hypothesis, holds: bool, statement: String) -> Self {
        let status = if holds { Status::Holds } else { Status::Violated };
        Check { name, statement, status, hypothesis, color: None, base_edge: None }
    }

    fn not_applicable(name: &'static str, hypothesis: Hypothesis, why: String) -> Self {
        Check { name, statement: why, status: Status::NotApplicable, hypothesis, color: None, base_edge: None }
    }

    fn for_color(mut self, label: usize) -> Self {
        self.color = Some(label);
        self
    }

    fn at_base(mut self, base: (usize, usize)) -> Self {
        self.base_edge = Some(base);
        self
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Violated
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub mu: usize,
    pub checks: Vec<Check>,
}

impl CertificateReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn find(&self, name: &str) -> impl Iterator<Item = &Check> {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, mu = {}", self.n, self.mu)?;
        writeln!(f, "{:<22} {:>5} {:>8} {:<14} {:<13} statement", "check", "color", "base", "status", "hypothesis")?;
        for c in &self.checks {
            let color = c.color.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let base = c.base_edge.map(|(a, b)| format!("{{{a},{b}}}")).unwrap_or_else(|| "-".into());
            let status = match c.status {
                Status::Holds => "holds",
                Status::Violated => "VIOLATED",
                Status::NotApplicable => "n/a",
            };
            let hyp = match c.hypothesis {
                Hypothesis::ValidSimple => "valid",
                Hypothesis::EdgeMinimum => "edge-minimum",
            };
            writeln!(f, "{:<22} {:>5} {:>8} {:<14} {:<13} {}", c.name, color, base, status, hyp, c.statement)?;
        }
        Ok(())
    }
}

/// Evaluates every certificate over every dimension color and every base
/// edge. Requires a valid, non-vacuous graph.
pub fn certificate_report(g: &ExperimentGraph) -> Result<CertificateReport> {
    certificate_report_for(g, None)
}

/// As [`certificate_report`], restricting the per-color checks to `only`.
pub fn certificate_report_for(g: &ExperimentGraph, only: Option<Color>) -> Result<CertificateReport> {
    use Hypothesis::{EdgeMinimum, ValidSimple};

    let colors = dimension_colors(g)?;
    if let Some(c) = only {
        if !colors.contains(&c) {
            return Err(Error::Precondition(format!("color {} is not a dimension color", g.color_label(c))));
        }
    }
    let n = g.vertex_count() as i128;
    let mu = colors.len() as i128;
    let mut checks = Vec::new();

    // every dimension color has a monochromatic edge at every vertex
    let missing: Vec<String> = (0..g.vertex_count())
        .flat_map(|x| colors.iter().map(move |&c| (x, c)))
        .filter(|&(x, c)| !g.incident(x).any(|(_, e)| e.color() == Some(c)))
        .map(|(x, c)| format!("({}, {})", g.vertex_label(x), g.color_label(c)))
        .collect();
    checks.push(Check::new(
        "monoedge",
        ValidSimple,
        missing.is_empty(),
        if missing.is_empty() {
            "every (vertex, color) has a monochromatic edge".into()
        } else {
            format!("missing at {}", missing.join(" "))
        },
    ));

    // d(v,i) = 1 for at least 2μ - n + 1 colors at every vertex
    let threshold = 2 * mu - n + 1;
    let (worst_vertex, worst) = (0..g.vertex_count())
        .map(|x| (x, colors.iter().filter(|&&c| g.degree_of_color(x, c) == 1).count() as i128))
        .min_by_key(|&(_, k)| k)
        .unwrap_or((0, 0));
    checks.push(Check::new(
        "deg_obs",
        ValidSimple,
        worst >= threshold,
        format!("min_v #{{i: d(v,i)=1}} = {worst} (vertex {}) >= 2mu-n+1 = {threshold}", g.vertex_label(worst_vertex)),
    ));

    let isolated = find_color_isolated_edges(g);
    let iso_count = isolated.len() as i128;
    checks.push(Check::new(
        "large_col_iso_edges",
        EdgeMinimum,
        2 * iso_count >= threshold * n,
        format!("2*{iso_count} >= (2mu-n+1)*n = {}", threshold * n),
    ));

    let per_color: Vec<(Color, i128)> = colors
        .iter()
        .map(|&c| (c, isolated.iter().filter(|&&k| g.edge(k).color() == Some(c)).count() as i128))
        .collect();
    let (big_color, big) = per_color.iter().copied().max_by_key(|&(c, k)| (k, std::cmp::Reverse(c))).expect("mu >= 1");
    checks.push(
        Check::new(
            "large_red_matching",
            EdgeMinimum,
            2 * mu * big >= (2 * mu - n) * n,
            format!("2mu*{big} = {} >= (2mu-n)*n = {}", 2 * mu * big, (2 * mu - n) * n),
        )
        .for_color(g.color_label(big_color)),
    );

    for &c in &colors {
        if only.is_some_and(|o| o != c) {
            continue;
        }
        let label = g.color_label(c);
        let p = match SparsePartition::compute(g, c, colors.clone()) {
            Ok(p) => p,
            Err(e) => {
                checks.push(Check::new("partition", ValidSimple, false, e.to_string()).for_color(label));
                continue;
            }
        };
        let (r, u, m) = (p.r.len() as i128, p.u.len() as i128, p.isolated_matching.len() as i128);
        let perfect = p.matching_is_perfect_on_r();
        checks.push(
            Check::new("isolated_matching_on_r", EdgeMinimum, perfect, format!("2|M| = {} == |R| = {r}", 2 * m))
                .for_color(label),
        );
        if c == big_color {
            checks.push(
                Check::new("r_bound", EdgeMinimum, mu * r >= (2 * mu - n) * n, format!("mu*|R| = {} >= (2mu-n)*n = {}", mu * r, (2 * mu - n) * n))
                    .for_color(label),
            );
            checks.push(
                Check::new("u_bound", EdgeMinimum, mu * u <= n * n - n * mu, format!("mu*|U| = {} <= n^2-n*mu = {}", mu * u, n * n - n * mu))
                    .for_color(label),
            );
        }
        if !perfect {
            checks.push(
                Check::not_applicable("chi", EdgeMinimum, "isolated matching not perfect on R".into()).for_color(label),
            );
            continue;
        }
        if p.isolated_matching.is_empty() {
            checks.push(Check::not_applicable("chi", EdgeMinimum, "no isolated edge of this color".into()).for_color(label));
            continue;
        }
        for &base in &p.isolated_matching {
            let be = g.edge(base);
            let base_label = (g.vertex_label(be.u), g.vertex_label(be.v));
            let chi = match build_chi(g, &p, base) {
                Ok(chi) => chi,
                Err(e) => {
                    checks.push(Check::new("chi", EdgeMinimum, false, e.to_string()).for_color(label).at_base(base_label));
                    continue;
                }
            };
            let chi_len = chi.chi.len() as i128;
            checks.push(
                Check::new(
                    "sumoftwo",
                    EdgeMinimum,
                    2 * mu <= 2 * u + chi_len + 1,
                    format!("2mu = {} <= 2|U|+|E(chi)|+1 = {}", 2 * mu, 2 * u + chi_len + 1),
                )
                .for_color(label)
                .at_base(base_label),
            );
            let others: Vec<usize> = p.isolated_matching.iter().copied().filter(|&k| k != base).collect();
            if n <= 4 || others.is_empty() {
                checks.push(
                    Check::not_applicable("struct_lemma", EdgeMinimum, format!("needs n > 4 and |M| >= 2 (n = {n}, |M| = {m})"))
                        .for_color(label)
                        .at_base(base_label),
                );
            } else {
                let (worst_edge, cross) = others
                    .iter()
                    .map(|&k| (k, cross_edges(g, &chi, k)))
                    .max_by_key(|&(k, c)| (c, std::cmp::Reverse(k)))
                    .expect("non-empty");
                checks.push(
                    Check::new(
                        "struct_lemma",
                        EdgeMinimum,
                        cross <= 2,
                        format!("max cross edges = {cross} (to {}) <= 2", g.edge_label(g.edge(worst_edge))),
                    )
                    .for_color(label)
                    .at_base(base_label),
                );
            }
            let boundchi = Check::new(
                "boundchi",
                EdgeMinimum,
                chi_len < r,
                format!("|E(chi)| = {chi_len} <= |R|-1 = {}", r - 1),
            );
            let boundchi = if n > 4 {
                boundchi
            } else {
                Check::not_applicable("boundchi", EdgeMinimum, format!("needs n > 4 ({})", boundchi.statement))
            };
            checks.push(boundchi.for_color(label).at_base(base_label));
        }
    }

    checks.push(if n > 4 {
        Check::new("main_thm", ValidSimple, 2 * mu * mu <= n * n, format!("2mu^2 = {} <= n^2 = {}", 2 * mu * mu, n * n))
    } else {
        Check::not_applicable("main_thm", ValidSimple, format!("needs n > 4 (n = {n})"))
    });

    Ok(CertificateReport { n: g.vertex_count(), mu: colors.len(), checks })
}

/// `|{{u,u'},{u,v'},{v,u'},{v,v'}} ∩ E(χ)|` for the isolated edge `other`.
pub fn cross_edges(g: &ExperimentGraph, chi: &RepresentativeSparseGraph, other: usize) -> usize {
    let (a, b) = g.edge(other).pair();
    [(chi.u, a), (chi.u, b), (chi.v, a), (chi.v, b)]
        .into_iter()
        .filter_map(|(x, y)| g.edge_index(x, y))
        .filter(|k| chi.chi.contains(k))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, BLUE, GREEN, RED};
    use crate::gaussian::GaussianRational;
    use crate::graph::HalfColoredEdge;

    fn labels(g: &ExperimentGraph, vs: &[Vertex]) -> Vec<usize> {
        vs.iter().map(|&v| g.vertex_label(v)).collect()
    }

    fn edge_labels(g: &ExperimentGraph, idx: &[usize]) -> Vec<(usize, usize)> {
        idx.iter().map(|&k| (g.vertex_label(g.edge(k).u), g.vertex_label(g.edge(k).v))).collect()
    }

    #[test]
    fn c6_partition() {
        let g = fixtures::c6_alternating();
        let p = partition_ru(&g, GREEN).unwrap();
        assert_eq!(labels(&g, &p.r), vec![1, 2, 3, 4, 5, 6]);
        assert!(p.u.is_empty());
        assert_eq!(edge_labels(&g, &p.isolated_matching), vec![(1, 2), (3, 4), (5, 6)]);
        assert_eq!(p.r.len() + p.u.len(), 6);
    }

    #[test]
    fn fig1_red_partition() {
        let g = fixtures::fig1();
        let p = partition_ru(&g, RED).unwrap();
        assert_eq!(labels(&g, &p.r), vec![1, 2, 3, 6]);
        assert_eq!(labels(&g, &p.u), vec![4, 5]);
        assert_eq!(edge_labels(&g, &p.isolated_matching), vec![(1, 6), (2, 3)]);
        assert_eq!(edge_labels(&g, &[select_base_edge(&p).unwrap()]), vec![(1, 6)]);
        // green: R = {1,2,4,5} but only {1,2} is isolated
        assert!(matches!(partition_ru(&g, GREEN), Err(Error::Precondition(_))));
    }

    #[test]
    fn k4_partition() {
        let g = fixtures::k4_three_colored();
        for c in [RED, GREEN, BLUE] {
            let p = partition_ru(&g, c).unwrap();
            assert_eq!(p.r.len(), 4);
            assert!(p.u.is_empty());
        }
    }

    #[test]
    fn select_base_edge_cases() {
        let g = fixtures::c6_alternating();
        let p = partition_ru(&g, GREEN).unwrap();
        assert_eq!(edge_labels(&g, &[select_base_edge(&p).unwrap()]), vec![(1, 2)]);
        let single = partition_ru(&fixtures::single_edge(), 0).unwrap();
        assert_eq!(select_base_edge(&single).unwrap(), 0);
        let empty = SparsePartition { isolated_matching: vec![], ..single };
        assert!(select_base_edge(&empty).is_err());
    }

    #[test]
    fn partition_rejects_missing_color() {
        let one = GaussianRational::from(1);
        let g = ExperimentGraph::new(
            4,
            [HalfColoredEdge::mono(0, 1, 0, one.clone()), HalfColoredEdge::mono(2, 3, 1, one)],
        )
        .unwrap();
        assert!(matches!(SparsePartition::compute(&g, 0, vec![0]), Err(Error::MonoedgeViolated(_))));
    }

    #[test]
    fn chi_on_c6() {
        let g = fixtures::c6_alternating();
        let p = partition_ru(&g, GREEN).unwrap();
        let chi = build_chi(&g, &p, select_base_edge(&p).unwrap()).unwrap();
        assert_eq!(edge_labels(&g, &chi.chi_u), vec![(1, 2), (1, 6)]);
        assert_eq!(edge_labels(&g, &chi.chi_v), vec![(1, 2), (2, 3)]);
        assert_eq!(chi.chi.len(), 3);
    }

    #[test]
    fn chi_on_k4() {
        let g = fixtures::k4_three_colored();
        let p = partition_ru(&g, BLUE).unwrap();
        let base = g.edge_index(0, 1).unwrap();
        let chi = build_chi(&g, &p, base).unwrap();
        assert_eq!(chi.chi_u.len(), 3);
        assert_eq!(chi.chi_v.len(), 3);
        assert_eq!(chi.chi.len(), 5);
        assert!(build_chi(&g, &p, g.edge_index(0, 2).unwrap()).is_err());
    }

    /// The drawing's example: red is the partition color, `χ_u` reaches
    /// `1` and `3`, `χ_v` reaches `4`, and `v`'s blue half goes into `U`.
    #[test]
    fn chi_matches_figure_shape() {
        let one = GaussianRational::from(1);
        let (u, v, p1, p2, p3, p4, w5, w6) = (0, 1, 2, 3, 4, 5, 6, 7);
        let edges = vec![
            HalfColoredEdge::mono(u, v, RED, one.clone()),
            HalfColoredEdge::mono(p1, p2, RED, one.clone()),
            HalfColoredEdge::mono(p3, p4, RED, one.clone()),
            HalfColoredEdge::mono(w5, w6, RED, one.clone()),
            HalfColoredEdge::new(v, w5, BLUE, RED, one.clone()),
            HalfColoredEdge::new(w6, p2, RED, GREEN, one.clone()),
            HalfColoredEdge::mono(u, p1, GREEN, one.clone()),
            HalfColoredEdge::mono(u, p3, BLUE, one.clone()),
            HalfColoredEdge::mono(v, p4, GREEN, one),
        ];
        let g = ExperimentGraph::new(8, edges).unwrap();
        let p = SparsePartition::compute(&g, RED, vec![RED, GREEN, BLUE]).unwrap();
        assert_eq!(p.u, vec![w5, w6]);
        assert!(p.matching_is_perfect_on_r());
        let chi = build_chi(&g, &p, g.edge_index(u, v).unwrap()).unwrap();
        let pairs = |idx: &[usize]| -> Vec<(usize, usize)> { idx.iter().map(|&k| g.edge(k).pair()).collect() };
        assert_eq!(pairs(&chi.chi_u), vec![(u, v), (u, p1), (u, p3)]);
        assert_eq!(pairs(&chi.chi_v), vec![(u, v), (v, p4)]);
        assert_eq!(chi.chi.len(), 4);
    }

    #[test]
    fn c6_report() {
        let g = fixtures::c6_alternating();
        let report = certificate_report(&g).unwrap();
        assert!(report.all_hold(), "{report}");
        let deg = report.find("deg_obs").next().unwrap();
        assert!(deg.statement.contains("2mu-n+1 = -1"), "{}", deg.statement);
        let base12 = |c: &&Check| c.color == Some(GREEN) && c.base_edge == Some((1, 2));
        let bound = report.find("boundchi").find(base12).unwrap();
        assert_eq!(bound.statement, "|E(chi)| = 3 <= |R|-1 = 5");
        let sum = report.find("sumoftwo").find(base12).unwrap();
        assert_eq!(sum.statement, "2mu = 4 <= 2|U|+|E(chi)|+1 = 4");
        let cross = report.find("struct_lemma").find(base12).unwrap();
        assert_eq!(cross.status, Status::Holds);
        assert!(cross.statement.starts_with("max cross edges = 1"), "{}", cross.statement);
    }

    #[test]
    fn struct_lemma_cross_count_against_three_four() {
        let g = fixtures::c6_alternating();
        let p = partition_ru(&g, GREEN).unwrap();
        let chi = build_chi(&g, &p, g.edge_index(0, 1).unwrap()).unwrap();
        assert_eq!(cross_edges(&g, &chi, g.edge_index(2, 3).unwrap()), 1);
        assert_eq!(cross_edges(&g, &chi, g.edge_index(4, 5).unwrap()), 1);
    }

    #[test]
    fn k4_report() {
        let g = fixtures::k4_three_colored();
        let report = certificate_report(&g).unwrap();
        assert!(report.all_hold(), "{report}");
        let deg = report.find("deg_obs").next().unwrap();
        assert_eq!(deg.status, Status::Holds);
        assert!(deg.statement.contains("= 3 (vertex 1) >= 2mu-n+1 = 3"), "{}", deg.statement);
        assert_eq!(report.find("main_thm").next().unwrap().status, Status::NotApplicable);
        assert!(report.find("boundchi").all(|c| c.status == Status::NotApplicable));
    }

    #[test]
    fn report_rejects_invalid_and_vacuous() {
        assert!(matches!(certificate_report(&fixtures::fig1_broken()), Err(Error::InvalidGraph(_))));
        let empty = ExperimentGraph::new(2, []).unwrap();
        assert!(matches!(certificate_report(&empty), Err(Error::Precondition(_))));
    }

    #[test]
    fn unpruned_fig1_flags_edge_minimum_checks_only() {
        let report = certificate_report(&fixtures::fig1()).unwrap();
        assert!(report.violations().all(|c| c.hypothesis == Hypothesis::EdgeMinimum));
        assert!(report.violations().count() > 0);
    }
}
