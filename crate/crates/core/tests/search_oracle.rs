use std::collections::BTreeSet;

use xgraph::search::{alphabet_pm1, search_max_dimension, SearchSpace, DEFAULT_BUDGET};
use xgraph::{canonical_form, verify, ExperimentGraph, GaussianRational, HalfColoredEdge};

/// Every valid graph on `n` vertices whose colors (at most `d`) are all
/// monochromatically feasible and number exactly `mu`, by brute force over
/// all edge colorings and weightings.
fn brute_force(n: usize, d: usize, mono_only: bool, weights: &[GaussianRational], mu: usize) -> BTreeSet<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut options: Vec<Option<(usize, usize)>> = vec![None];
    for ca in 0..d {
        for cb in 0..d {
            if ca == cb || !mono_only {
                options.push(Some((ca, cb)));
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; pairs.len()];
    loop {
        let present: Vec<(usize, (usize, usize))> =
            choice.iter().enumerate().filter_map(|(p, &o)| options[o].map(|c| (p, c))).collect();
        let used: BTreeSet<usize> = present.iter().flat_map(|(_, (a, b))| [*a, *b]).collect();
        if used.len() == mu {
            let mut w = vec![0usize; present.len()];
            loop {
                let edges = present.iter().zip(&w).map(|(&(p, (ca, cb)), &k)| {
                    let (a, b) = pairs[p];
                    HalfColoredEdge::new(a, b, ca, cb, weights[k].clone())
                });
                let g = ExperimentGraph::new(n, edges).unwrap();
                let v = verify(&g).unwrap();
                if v.is_valid && v.mu == mu {
                    out.insert(canonical_form(&g).unwrap());
                }
                if !odometer(&mut w, weights.len()) {
                    break;
                }
            }
        }
        if !odometer(&mut choice, options.len()) {
            break;
        }
    }
    out
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn searched(n: usize, mu: usize, mono_only: bool, weights: Vec<GaussianRational>, up_to_iso: bool) -> BTreeSet<Vec<u8>> {
    let space = SearchSpace {
        weight_alphabet: weights,
        mono_only,
        up_to_iso,
        min_mu: mu,
        all_weightings: true,
        ..SearchSpace::new(n, mu)
    };
    let r = search_max_dimension(&space, DEFAULT_BUDGET).unwrap();
    assert!(r.complete);
    if !r.witnesses.is_empty() {
        assert_eq!(r.best_mu, mu);
    }
    for w in &r.witnesses {
        assert!(verify(w).unwrap().is_valid);
    }
    let forms: Vec<Vec<u8>> = r.witnesses.iter().map(|w| canonical_form(w).unwrap()).collect();
    let set: BTreeSet<Vec<u8>> = forms.iter().cloned().collect();
    if up_to_iso {
        assert_eq!(set.len(), forms.len(), "duplicate isomorphism classes");
    }
    set
}

#[test]
fn n4_mono_pm1_matches_brute_force() {
    for mu in 1..=2 {
        let oracle = brute_force(4, mu, true, &alphabet_pm1(), mu);
        assert!(!oracle.is_empty());
        assert_eq!(searched(4, mu, true, alphabet_pm1(), true), oracle, "mu = {mu}");
        assert_eq!(searched(4, mu, true, alphabet_pm1(), false), oracle, "mu = {mu}, labeled");
    }
}

#[test]
fn n4_bichromatic_unit_weight_matches_brute_force() {
    let one = vec![GaussianRational::from(1)];
    for mu in 1..=3 {
        let oracle = brute_force(4, mu, false, &one, mu);
        assert_eq!(searched(4, mu, false, one.clone(), true), oracle, "mu = {mu}");
    }
}

#[test]
fn worker_count_does_not_change_result() {
    use xgraph::search::{search_with, SearchOptions};
    let space = SearchSpace { weight_alphabet: alphabet_pm1(), ..SearchSpace::new(6, 2) };
    let run = |workers| {
        let r = search_with(&space, &SearchOptions { workers, ..SearchOptions::default() }).unwrap();
        (r.best_mu, r.explored, r.witnesses.iter().map(xgraph::io::serialize_graph).collect::<Vec<_>>())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn checkpoint_resume_reaches_same_result() {
    use xgraph::search::{search_with, SearchOptions};
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("search.ckpt");
    let space = SearchSpace { weight_alphabet: alphabet_pm1(), ..SearchSpace::new(6, 2) };
    let full = search_with(&space, &SearchOptions::default()).unwrap();

    let mut opts = SearchOptions { budget: full.explored / 3, checkpoint: Some(ckpt.clone()), resume: true, ..SearchOptions::default() };
    let partial = search_with(&space, &opts).unwrap();
    assert!(!partial.complete);
    assert!(ckpt.exists());
    opts.budget = u64::MAX;
    let resumed = search_with(&space, &opts).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.best_mu, full.best_mu);
    let text = |r: &xgraph::search::SearchResult| r.witnesses.iter().map(xgraph::io::serialize_graph).collect::<Vec<_>>();
    assert_eq!(text(&resumed), text(&full));

    let other = SearchSpace { max_colors: 3, ..space };
    assert!(search_with(&other, &opts).is_err());
}
