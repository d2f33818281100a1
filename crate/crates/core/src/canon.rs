//! Canonical labeling up to vertex and color permutations.
//!
//! A graph on `n` vertices is written as the `n(n-1)/2` vertex pairs in
//! row-major order `(0,1), (0,2), …, (n-2,n-1)`, each pair either absent or
//! carrying the colors at its two ends and a weight rank. Colors are renamed
//! in order of first appearance, which makes the word invariant under color
//! permutations; the canonical form is the lexicographically smallest word
//! over all vertex permutations. Exhaustive, so limited to `n ≤ 10`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::ExperimentGraph;

pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Index of the pair `a < b` in row-major order.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// A slot: colors at the lower and the higher endpoint (by original
/// label) and an opaque weight class.
pub type Slot = Option<(u32, u32, u32)>;

/// Pair-indexed view of a colored graph, ready for canonization.
#[derive(Clone, Debug)]
pub struct Skeleton {
    n: usize,
    slots: Vec<Slot>,
}

impl Skeleton {
    pub fn new(n: usize, slots: Vec<Slot>) -> Self {
        assert_eq!(slots.len(), n * n.saturating_sub(1) / 2);
        Skeleton { n, slots }
    }

    fn slot(&self, x: usize, y: usize) -> Option<(u32, u32, u32)> {
        match x.cmp(&y) {
            Ordering::Less => self.slots[pair_index(self.n, x, y)],
            Ordering::Greater => self.slots[pair_index(self.n, y, x)].map(|(cy, cx, w)| (cx, cy, w)),
            Ordering::Equal => None,
        }
    }

    /// Compares the word of this skeleton relabeled by `inv` (new vertex
    /// `a` is old vertex `inv[a]`) against `best`, writing the word into
    /// `out` only while it stays `<=` the prefix of `best`.
    fn compare_relabeled(&self, inv: &[usize], best: Option<&[u32]>, out: &mut Vec<u32>, colors: &mut Vec<u32>) -> Ordering {
        out.clear();
        colors.clear();
        let mut ord = if best.is_some() { Ordering::Equal } else { Ordering::Less };
        for a in 0..self.n {
            for b in a + 1..self.n {
                let triple = match self.slot(inv[a], inv[b]) {
                    None => [0, 0, 0],
                    Some((ca, cb, w)) => [1 + rename(colors, ca), 1 + rename(colors, cb), 1 + w],
                };
                for t in triple {
                    if ord == Ordering::Equal {
                        let reference = best.expect("equal implies a reference")[out.len()];
                        ord = t.cmp(&reference);
                        if ord == Ordering::Greater {
                            return ord;
                        }
                    }
                    out.push(t);
                }
            }
        }
        ord
    }

    /// The smallest word over all vertex permutations.
    pub fn canonical_word(&self) -> Vec<u32> {
        let mut inv: Vec<usize> = (0..self.n).collect();
        let mut best: Vec<u32> = Vec::new();
        let mut scratch = Vec::new();
        let mut colors = Vec::new();
        let mut first = true;
        loop {
            let ord = self.compare_relabeled(&inv, (!first).then_some(&best[..]), &mut scratch, &mut colors);
            if ord == Ordering::Less {
                std::mem::swap(&mut best, &mut scratch);
            }
            first = false;
            if !next_permutation(&mut inv) {
                return best;
            }
        }
    }

    /// The word under the identity labeling.
    pub fn identity_word(&self) -> Vec<u32> {
        let inv: Vec<usize> = (0..self.n).collect();
        let mut out = Vec::new();
        self.compare_relabeled(&inv, None, &mut out, &mut Vec::new());
        out
    }

    /// True when no vertex permutation yields a smaller word than the
    /// identity, i.e. this labeling is the canonical representative.
    pub fn is_canonical(&self) -> bool {
        let reference = self.identity_word();
        let mut inv: Vec<usize> = (0..self.n).collect();
        let mut scratch = Vec::new();
        let mut colors = Vec::new();
        while next_permutation(&mut inv) {
            if self.compare_relabeled(&inv, Some(&reference), &mut scratch, &mut colors) == Ordering::Less {
                return false;
            }
        }
        true
    }
}

fn rename(map: &mut Vec<u32>, c: u32) -> u32 {
    match map.iter().position(|&x| x == c) {
        Some(k) => k as u32,
        None => {
            map.push(c);
            (map.len() - 1) as u32
        }
    }
}

/// Lexicographic successor; false once the last permutation is reached.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn check_size(g: &ExperimentGraph) -> Result<()> {
    if g.vertex_count() > MAX_CANONICAL_VERTICES {
        return Err(Error::Unsupported(format!(
            "canonical form is exhaustive and limited to {MAX_CANONICAL_VERTICES} vertices (got {})",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn skeleton(g: &ExperimentGraph, weight_class: impl Fn(&GaussianRational) -> u32) -> Skeleton {
    let n = g.vertex_count();
    let mut slots = vec![None; n * n.saturating_sub(1) / 2];
    for e in g.edges() {
        slots[pair_index(n, e.u, e.v)] = Some((e.color_at_u as u32, e.color_at_v as u32, weight_class(&e.weight)));
    }
    Skeleton::new(n, slots)
}

fn render(n: usize, header: &str, word: &[u32]) -> Vec<u8> {
    let body: Vec<String> = word.iter().map(|t| t.to_string()).collect();
    format!("n={n};w=[{header}];{}", body.join(",")).into_bytes()
}

/// Canonical byte string: equal for two graphs exactly when one is obtained
/// from the other by permuting vertices and permuting colors. Weights are
/// part of the graph and must match.
pub fn canonical_form(g: &ExperimentGraph) -> Result<Vec<u8>> {
    check_size(g)?;
    let mut weights: Vec<&GaussianRational> = g.edges().iter().map(|e| &e.weight).collect();
    weights.sort();
    weights.dedup();
    let class = |w: &GaussianRational| weights.binary_search(&w).expect("collected") as u32;
    let word = skeleton(g, class).canonical_word();
    let header: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    Ok(render(g.vertex_count(), &header.join(","), &word))
}

/// Like [`canonical_form`] but ignoring weights: the isomorphism class of
/// the colored skeleton.
pub fn canonical_coloring_form(g: &ExperimentGraph) -> Result<Vec<u8>> {
    check_size(g)?;
    let word = skeleton(g, |_| 0).canonical_word();
    Ok(render(g.vertex_count(), "", &word))
}
