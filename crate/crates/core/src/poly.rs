//! Validity conditions as a polynomial system over the edge weights.
//!
//! Each feasible vertex coloring contributes one equation
//! `Σ_{matchings} Π x_e = 1` (monochromatic) or `= 0` (otherwise), with one
//! variable `x_<u>_<v>` per edge named by its vertex labels. The text format
//! is one equation per line, terms joined by ` + ` and factors by `*`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::ExperimentGraph;
use crate::matching::{enumerate_perfect_matchings, group_by_coloring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Monomials; each is a product of variable names.
    pub terms: Vec<Vec<String>>,
    /// Either 0 or 1.
    pub rhs: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolynomialSystem {
    pub equations: Vec<Equation>,
}

pub fn variable_name(g: &ExperimentGraph, edge: usize) -> String {
    let e = g.edge(edge);
    format!("x_{}_{}", g.vertex_label(e.u), g.vertex_label(e.v))
}

/// The system for the colored skeleton `g`; its weights are ignored.
pub fn polynomial_system(g: &ExperimentGraph) -> Result<PolynomialSystem> {
    let matchings = enumerate_perfect_matchings(g)?;
    let classes = group_by_coloring(g, &matchings);
    let equations = classes
        .into_iter()
        .map(|(vc, members)| Equation {
            terms: members
                .into_iter()
                .map(|k| matchings[k].edges.iter().map(|&e| variable_name(g, e)).collect())
                .collect(),
            rhs: vc.is_monochromatic() as u8,
        })
        .collect();
    Ok(PolynomialSystem { equations })
}

pub fn export_polynomial_system(g: &ExperimentGraph) -> Result<String> {
    Ok(polynomial_system(g)?.to_string())
}

/// The concrete weights of `g` keyed by variable name.
pub fn weight_assignment(g: &ExperimentGraph) -> BTreeMap<String, GaussianRational> {
    (0..g.edge_count()).map(|k| (variable_name(g, k), g.edge(k).weight.clone())).collect()
}

impl Equation {
    pub fn evaluate(&self, values: &BTreeMap<String, GaussianRational>) -> Result<GaussianRational> {
        let mut sum = GaussianRational::from(0);
        for term in &self.terms {
            let mut product = GaussianRational::from(1);
            for var in term {
                let w = values.get(var).ok_or_else(|| Error::Input(format!("no value for variable {var}")))?;
                product *= w;
            }
            sum += &product;
        }
        Ok(sum)
    }

    pub fn is_satisfied_by(&self, values: &BTreeMap<String, GaussianRational>) -> Result<bool> {
        Ok(self.evaluate(values)? == GaussianRational::from(self.rhs as i64))
    }
}

impl PolynomialSystem {
    pub fn parse(text: &str) -> Result<Self> {
        let mut equations = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: {line}", lineno + 1));
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let rhs = match rhs.trim() {
                "0" => 0,
                "1" => 1,
                _ => return Err(bad("right-hand side must be 0 or 1")),
            };
            let terms = lhs
                .split('+')
                .map(|t| {
                    let factors: Vec<String> = t.split('*').map(|f| f.trim().to_string()).collect();
                    if factors.iter().any(|f| !is_variable(f)) {
                        return Err(bad("malformed term"));
                    }
                    Ok(factors)
                })
                .collect::<Result<Vec<_>>>()?;
            equations.push(Equation { terms, rhs });
        }
        Ok(PolynomialSystem { equations })
    }

    /// True when every equation holds exactly under `values`.
    pub fn is_satisfied_by(&self, values: &BTreeMap<String, GaussianRational>) -> Result<bool> {
        for eq in &self.equations {
            if !eq.is_satisfied_by(values)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn is_variable(s: &str) -> bool {
    let mut parts = s.split('_');
    parts.next() == Some("x")
        && parts.clone().count() == 2
        && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
}

impl fmt::Display for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            let terms: Vec<String> = eq.terms.iter().map(|t| t.join("*")).collect();
            writeln!(f, "{} = {}", terms.join(" + "), eq.rhs)?;
        }
        Ok(())
    }
}
