//! Exhaustive search for valid experiment graphs of maximum dimension.
//!
//! The search enumerates colorings of the pairs of `K_n` (absent, a
//! monochromatic color, or an ordered color pair) in row-major order, then
//! backtracks over weight assignments from a finite alphabet. The target set
//! is the *color-tight* valid graphs: every color in use is the color of a
//! feasible monochromatic coloring, so `μ` equals the number of colors. Any
//! valid graph reduces to a color-tight one with the same `μ` by dropping
//! edges that carry an infeasible color, so the maximum is unaffected.
//!
//! Colors are interchangeable and always enumerated in order of first
//! appearance; `up_to_iso` additionally keeps one representative per vertex
//! permutation class.
//!
//! Pruning, all sound for color-tight valid graphs:
//! - the colors are fixed once vertex 0 is complete, and every vertex must
//!   carry a monochromatic edge of each of them;
//! - every vertex has `d(v,i) = 1` for at least `2μ − n + 1` colors;
//! - a coloring induced by a single matching can never weigh 0;
//! - with weights in `{±1, ±i}` a sum of `k` matching weights can only be 0
//!   for even `k` and 1 for odd `k`.
//!
//! Work is split into units (one per admissible coloring of vertex 0's
//! edges) processed in fixed-size batches, so the result does not depend on
//! the number of worker threads. Every witness is re-checked with
//! [`verify`].

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::canon::{canonical_coloring_form, canonical_form, pair_index, Skeleton};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::{ExperimentGraph, HalfColoredEdge};
use crate::io::{graph_to_json, parse_graph, weight_from_json, weight_to_json};
use crate::validity::verify;

pub const MAX_SEARCH_VERTICES: usize = 8;
pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 1_000_000;
const BATCH: usize = 32;
const INT_WEIGHT_LIMIT: i64 = 1 << 20;

pub fn alphabet_pm1() -> Vec<GaussianRational> {
    vec![GaussianRational::from(1), GaussianRational::from(-1)]
}

pub fn alphabet_i4() -> Vec<GaussianRational> {
    let i = GaussianRational::i();
    vec![GaussianRational::from(1), GaussianRational::from(-1), i.clone(), -i]
}

#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub n: usize,
    pub max_colors: usize,
    pub weight_alphabet: Vec<GaussianRational>,
    pub mono_only: bool,
    pub up_to_iso: bool,
    /// Fixes the edge set; colors and weights stay free.
    pub base_graph: Option<ExperimentGraph>,
    /// Only graphs with at least this many colors are searched.
    pub min_mu: usize,
    /// Report every valid weighting of a coloring instead of the first.
    pub all_weightings: bool,
}

impl SearchSpace {
    /// Monochromatic edges, weights `{±1, ±i}`, up to isomorphism.
    pub fn new(n: usize, max_colors: usize) -> Self {
        SearchSpace {
            n,
            max_colors,
            weight_alphabet: alphabet_i4(),
            mono_only: true,
            up_to_iso: true,
            base_graph: None,
            min_mu: 1,
            all_weightings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n % 2 == 1 {
            return Err(Error::Input(format!("vertex count must be even and positive (got {})", self.n)));
        }
        if self.n > MAX_SEARCH_VERTICES {
            return Err(Error::Unsupported(format!("search is limited to n <= {MAX_SEARCH_VERTICES} (got {})", self.n)));
        }
        if self.max_colors == 0 || self.max_colors > 16 {
            return Err(Error::Input(format!("color count must be in 1..=16 (got {})", self.max_colors)));
        }
        if self.weight_alphabet.is_empty() {
            return Err(Error::Input("weight alphabet is empty".into()));
        }
        if self.weight_alphabet.iter().any(GaussianRational::is_zero) {
            return Err(Error::Input("weight alphabet must not contain 0".into()));
        }
        if let Some(g) = &self.base_graph {
            if g.vertex_count() != self.n {
                return Err(Error::Input(format!("base graph has {} vertices, expected {}", g.vertex_count(), self.n)));
            }
        }
        Ok(())
    }

    /// Stable description used in results and to match checkpoints.
    pub fn describe(&self) -> Value {
        json!({
            "n": self.n,
            "max_colors": self.max_colors,
            "weights": self.weight_alphabet.iter().map(weight_to_json).collect::<Vec<_>>(),
            "mono_only": self.mono_only,
            "up_to_iso": self.up_to_iso,
            "min_mu": self.min_mu,
            "all_weightings": self.all_weightings,
            "base_graph": self.base_graph.as_ref().map(graph_to_json),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
    /// Continue from `checkpoint` if the file exists.
    pub resume: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, workers: 0, checkpoint: None, checkpoint_every: DEFAULT_CHECKPOINT_EVERY, resume: false }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// 0 when nothing was found.
    pub best_mu: usize,
    pub witnesses: Vec<ExperimentGraph>,
    /// Search nodes visited (coloring and weight assignments).
    pub explored: u64,
    /// Subtrees cut by a pruning rule.
    pub pruned: u64,
    /// False when the budget ran out first.
    pub complete: bool,
    pub units_done: usize,
    pub units_total: usize,
}

impl SearchResult {
    pub fn to_json(&self, space: &SearchSpace) -> Value {
        json!({
            "space": space.describe(),
            "best_mu": self.best_mu,
            "complete": self.complete,
            "explored": self.explored,
            "pruned": self.pruned,
            "units_done": self.units_done,
            "units_total": self.units_total,
            "witnesses": self.witnesses.iter().map(graph_to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn search_max_dimension(space: &SearchSpace, budget: u64) -> Result<SearchResult> {
    search_with(space, &SearchOptions { budget, ..SearchOptions::default() })
}

type Colors = Option<(u8, u8)>;

#[derive(Clone, Debug)]
struct Found {
    unit: usize,
    seq: usize,
    mu: usize,
    graph: ExperimentGraph,
}

enum Alphabet {
    Int(Vec<GInt>),
    Exact(Vec<GaussianRational>),
}

struct Plan {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// `None`: free; `Some(true)`: must be present; `Some(false)`: absent.
    forced: Vec<Option<bool>>,
    matchings: Vec<(u64, Vec<usize>)>,
    split: usize,
    max_colors: usize,
    mono_only: bool,
    min_mu: usize,
    canonical_filter: bool,
    parity: bool,
    all_weightings: bool,
    alphabet: Alphabet,
    weights: Vec<GaussianRational>,
}

impl Plan {
    fn new(space: &SearchSpace) -> Result<Self> {
        space.validate()?;
        let n = space.n;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let forced = match &space.base_graph {
            None => vec![None; pairs.len()],
            Some(g) => pairs.iter().map(|&(a, b)| Some(g.edge_index(a, b).is_some())).collect(),
        };
        let mut matchings = Vec::new();
        perfect_matchings_of_kn(n, &mut vec![false; n], &mut Vec::new(), &mut matchings);
        let ints: Option<Vec<GInt>> = space
            .weight_alphabet
            .iter()
            .map(|w| w.as_gaussian_int().filter(|(a, b)| a.abs() <= INT_WEIGHT_LIMIT && b.abs() <= INT_WEIGHT_LIMIT))
            .map(|w| w.map(|(a, b)| GInt(a as i128, b as i128)))
            .collect();
        let alphabet = match ints {
            Some(v) => Alphabet::Int(v),
            None => Alphabet::Exact(space.weight_alphabet.clone()),
        };
        Ok(Plan {
            n,
            split: n - 1,
            pairs,
            forced,
            matchings,
            max_colors: space.max_colors,
            mono_only: space.mono_only,
            min_mu: space.min_mu,
            canonical_filter: space.up_to_iso && space.base_graph.is_none(),
            parity: space.weight_alphabet.iter().all(GaussianRational::is_fourth_root_of_unity),
            all_weightings: space.all_weightings,
            alphabet,
            weights: space.weight_alphabet.clone(),
        })
    }
}

fn perfect_matchings_of_kn(n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<(u64, Vec<usize>)>) {
    let Some(a) = used.iter().position(|&u| !u) else {
        let mask = cur.iter().fold(0u64, |m, &p| m | 1 << p);
        out.push((mask, cur.clone()));
        return;
    };
    used[a] = true;
    for b in a + 1..n {
        if !used[b] {
            used[b] = true;
            cur.push(pair_index(n, a, b));
            perfect_matchings_of_kn(n, used, cur, out);
            cur.pop();
            used[b] = false;
        }
    }
    used[a] = false;
}

/// Gaussian integer with room for products of a few small factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct GInt(i128, i128);

trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn is_int(&self, k: u8) -> bool;
}

impl Ring for GInt {
    fn zero() -> Self {
        GInt(0, 0)
    }
    fn one() -> Self {
        GInt(1, 0)
    }
    fn mul(&self, o: &Self) -> Self {
        GInt(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(&self, o: &Self) -> Self {
        GInt(self.0 + o.0, self.1 + o.1)
    }
    fn is_int(&self, k: u8) -> bool {
        *self == GInt(k as i128, 0)
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::from(0)
    }
    fn one() -> Self {
        GaussianRational::from(1)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn is_int(&self, k: u8) -> bool {
        *self == GaussianRational::from(k as i64)
    }
}

/// Weight constraints of one coloring: local edge indices per matching and
/// the matchings (with target weight) per induced vertex coloring.
struct WeightProblem {
    edge_count: usize,
    matchings: Vec<Vec<usize>>,
    classes: Vec<(Vec<usize>, u8)>,
    checks_at: Vec<Vec<usize>>,
}

#[derive(Default)]
struct Counters {
    nodes: u64,
    pruned: u64,
    limit: u64,
    aborted: bool,
}

impl Counters {
    fn step(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
        }
        !self.aborted
    }
}

fn solve_weights<R: Ring>(
    prob: &WeightProblem,
    alphabet: &[R],
    all: bool,
    ctr: &mut Counters,
    assign: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let pos = assign.len();
    if pos == prob.edge_count {
        out.push(assign.clone());
        return;
    }
    for w in 0..alphabet.len() {
        if !ctr.step() {
            return;
        }
        assign.push(w);
        let ok = prob.checks_at[pos].iter().all(|&c| {
            let (members, target) = &prob.classes[c];
            let sum = members.iter().fold(R::zero(), |acc, &m| {
                acc.add(&prob.matchings[m].iter().fold(R::one(), |p, &e| p.mul(&alphabet[assign[e]])))
            });
            sum.is_int(*target)
        });
        if ok {
            solve_weights(prob, alphabet, all, ctr, assign, out);
        } else {
            ctr.pruned += 1;
        }
        assign.pop();
        if ctr.aborted || (!all && !out.is_empty()) {
            return;
        }
    }
}

struct Dfs<'a> {
    plan: &'a Plan,
    slots: Vec<Colors>,
    /// `cnt[v][c]`: half-edges of color `c` at `v`.
    cnt: Vec<Vec<u8>>,
    mono: Vec<Vec<u8>>,
    k: usize,
    ctr: Counters,
    stop_at: Option<usize>,
    prefixes: Vec<(Vec<Colors>, usize)>,
    found: Vec<(usize, Vec<Colors>, Vec<usize>)>,
}

impl<'a> Dfs<'a> {
    fn new(plan: &'a Plan, limit: u64) -> Self {
        let n = plan.n;
        Dfs {
            plan,
            slots: vec![None; plan.pairs.len()],
            cnt: vec![vec![0; plan.max_colors]; n],
            mono: vec![vec![0; plan.max_colors]; n],
            k: 0,
            ctr: Counters { limit, ..Counters::default() },
            stop_at: None,
            prefixes: Vec::new(),
            found: Vec::new(),
        }
    }

    fn options(&self, p: usize) -> Vec<Colors> {
        let mut out = Vec::new();
        if self.plan.forced[p] != Some(true) {
            out.push(None);
        }
        if self.plan.forced[p] == Some(false) {
            return out;
        }
        let row0 = p < self.plan.split;
        let fresh = |k: usize| if row0 { (k + 1).min(self.plan.max_colors) } else { k };
        let lim = fresh(self.k);
        for c in 0..lim {
            out.push(Some((c as u8, c as u8)));
        }
        if !self.plan.mono_only {
            for ca in 0..lim {
                let lim_b = if ca == self.k { fresh(self.k + 1) } else { lim };
                for cb in 0..lim_b {
                    if cb != ca {
                        out.push(Some((ca as u8, cb as u8)));
                    }
                }
            }
        }
        out
    }

    fn apply(&mut self, p: usize, colors: Colors, sign: i8) {
        let Some((ca, cb)) = colors else { return };
        let (a, b) = self.plan.pairs[p];
        let bump = |x: &mut u8| *x = (*x as i16 + sign as i16) as u8;
        bump(&mut self.cnt[a][ca as usize]);
        bump(&mut self.cnt[b][cb as usize]);
        if ca == cb {
            bump(&mut self.mono[a][ca as usize]);
            bump(&mut self.mono[b][ca as usize]);
        }
    }

    fn vertex_ok(&self, x: usize) -> bool {
        let k = self.k;
        if (0..k).any(|c| self.mono[x][c] == 0) {
            return false;
        }
        let ones = (0..k).filter(|&c| self.cnt[x][c] == 1).count() as i64;
        ones > 2 * k as i64 - self.plan.n as i64
    }

    fn completes_ok(&self, p: usize) -> bool {
        let (a, b) = self.plan.pairs[p];
        let n = self.plan.n;
        if b != n - 1 {
            return true;
        }
        if a == 0 && self.k < self.plan.min_mu {
            return false;
        }
        self.vertex_ok(a) && (p + 1 < self.plan.pairs.len() || self.vertex_ok(n - 1))
    }

    fn go(&mut self, p: usize) {
        if self.stop_at == Some(p) {
            self.prefixes.push((self.slots[..p].to_vec(), self.k));
            return;
        }
        if p == self.plan.pairs.len() {
            self.leaf();
            return;
        }
        for opt in self.options(p) {
            if !self.ctr.step() {
                return;
            }
            let old_k = self.k;
            if let Some((ca, cb)) = opt {
                self.k = self.k.max(ca as usize + 1).max(cb as usize + 1);
            }
            self.slots[p] = opt;
            self.apply(p, opt, 1);
            if self.completes_ok(p) {
                self.go(p + 1);
            } else {
                self.ctr.pruned += 1;
            }
            self.apply(p, opt, -1);
            self.slots[p] = None;
            self.k = old_k;
            if self.ctr.aborted {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        let plan = self.plan;
        let n = plan.n;
        let mut mask = 0u64;
        let mut local = vec![usize::MAX; self.slots.len()];
        let mut edge_count = 0;
        for (p, s) in self.slots.iter().enumerate() {
            if s.is_some() {
                mask |= 1 << p;
                local[p] = edge_count;
                edge_count += 1;
            }
        }

        // induced colorings packed 4 bits per vertex; colors are < 16
        let mut keyed: Vec<(u64, usize)> = Vec::new();
        let mut mono_colors = 0u32;
        for (k, (pm_mask, pm)) in plan.matchings.iter().enumerate() {
            if pm_mask & !mask != 0 {
                continue;
            }
            let (mut key, mut all) = (0u64, 0u32);
            for &p in pm {
                let (a, b) = plan.pairs[p];
                let (ca, cb) = self.slots[p].expect("present");
                key |= (ca as u64) << (4 * a) | (cb as u64) << (4 * b);
                all |= 1 << ca | 1 << cb;
            }
            if all.count_ones() == 1 {
                mono_colors |= all;
            }
            keyed.push((key, k));
        }
        if mono_colors.count_ones() as usize != self.k {
            self.ctr.pruned += 1;
            return;
        }
        keyed.sort_unstable();
        let is_mono = |key: u64| (0..n).all(|v| (key >> (4 * v)) & 15 == key & 15);
        let mut classes: Vec<(Vec<usize>, u8)> = Vec::new();
        let mut matchings: Vec<Vec<usize>> = Vec::new();
        for (i, &(key, k)) in keyed.iter().enumerate() {
            if i == 0 || keyed[i - 1].0 != key {
                classes.push((Vec::new(), is_mono(key) as u8));
            }
            classes.last_mut().expect("pushed").0.push(matchings.len());
            matchings.push(plan.matchings[k].1.iter().map(|&p| local[p]).collect());
        }
        let feasible = classes.iter().all(|(members, mono)| {
            (*mono == 1 || members.len() >= 2) && (!plan.parity || members.len() % 2 == *mono as usize)
        });
        if !feasible {
            self.ctr.pruned += 1;
            return;
        }
        if plan.canonical_filter {
            let slots = self.slots.iter().map(|s| s.map(|(a, b)| (a as u32, b as u32, 0))).collect();
            if !Skeleton::new(n, slots).is_canonical() {
                self.ctr.pruned += 1;
                return;
            }
        }

        let mut checks_at = vec![Vec::new(); edge_count];
        for (c, (members, _)) in classes.iter().enumerate() {
            let last = members.iter().flat_map(|&m| matchings[m].iter().copied()).max().expect("matchings are non-empty");
            checks_at[last].push(c);
        }
        let prob = WeightProblem { edge_count, matchings, classes, checks_at };
        let mut out = Vec::new();
        match &plan.alphabet {
            Alphabet::Int(a) => solve_weights(&prob, a, plan.all_weightings, &mut self.ctr, &mut Vec::new(), &mut out),
            Alphabet::Exact(a) => solve_weights(&prob, a, plan.all_weightings, &mut self.ctr, &mut Vec::new(), &mut out),
        }
        if self.ctr.aborted {
            return;
        }
        for w in out {
            self.found.push((self.k, self.slots.clone(), w));
        }
    }
}

fn build_witness(plan: &Plan, slots: &[Colors], weights: &[usize]) -> Result<ExperimentGraph> {
    let edges = slots
        .iter()
        .enumerate()
        .filter_map(|(p, s)| s.map(|c| (p, c)))
        .zip(weights)
        .map(|((p, (ca, cb)), &w)| {
            let (a, b) = plan.pairs[p];
            HalfColoredEdge::new(a, b, ca as usize, cb as usize, plan.weights[w].clone())
        });
    ExperimentGraph::new(plan.n, edges)
}

struct UnitOutcome {
    nodes: u64,
    pruned: u64,
    aborted: bool,
    found: Vec<Found>,
}

fn run_unit(plan: &Plan, unit: usize, prefix: &(Vec<Colors>, usize), limit: u64) -> Result<UnitOutcome> {
    let mut dfs = Dfs::new(plan, limit);
    for (p, &c) in prefix.0.iter().enumerate() {
        dfs.slots[p] = c;
        dfs.apply(p, c, 1);
    }
    dfs.k = prefix.1;
    dfs.go(prefix.0.len());
    let mut found = Vec::new();
    for (seq, (mu, slots, weights)) in dfs.found.iter().enumerate() {
        let graph = build_witness(plan, slots, weights)?;
        let verdict = verify(&graph)?;
        if !verdict.is_valid || verdict.mu != *mu {
            return Err(Error::Internal(format!(
                "search produced a graph that does not verify (valid = {}, mu = {} vs {mu})",
                verdict.is_valid, verdict.mu
            )));
        }
        found.push(Found { unit, seq, mu: *mu, graph });
    }
    Ok(UnitOutcome { nodes: dfs.ctr.nodes, pruned: dfs.ctr.pruned, aborted: dfs.ctr.aborted, found })
}

struct State {
    next_unit: usize,
    explored: u64,
    pruned: u64,
    found: Vec<Found>,
}

impl State {
    fn keep_best(&mut self) {
        let best = self.found.iter().map(|f| f.mu).max().unwrap_or(0);
        self.found.retain(|f| f.mu == best);
    }

    fn to_json(&self, space: &SearchSpace) -> Value {
        json!({
            "format": "xgraph-search-checkpoint",
            "version": 1,
            "space": space.describe(),
            "next_unit": self.next_unit,
            "explored": self.explored,
            "pruned": self.pruned,
            "found": self.found.iter().map(|f| json!({
                "unit": f.unit, "seq": f.seq, "mu": f.mu, "graph": graph_to_json(&f.graph),
            })).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: &Value, space: &SearchSpace) -> Result<Self> {
        let bad = |what: &str| Error::Input(format!("checkpoint: {what}"));
        if v["format"] != "xgraph-search-checkpoint" || v["version"] != 1 {
            return Err(bad("unrecognized format"));
        }
        if v["space"] != space.describe() {
            return Err(bad("search parameters differ from the checkpoint"));
        }
        let num = |key: &str| v[key].as_u64().ok_or_else(|| bad(&format!("missing {key}")));
        let mut found = Vec::new();
        for f in v["found"].as_array().ok_or_else(|| bad("missing found"))? {
            let field = |key: &str| f[key].as_u64().map(|x| x as usize).ok_or_else(|| bad(&format!("missing found.{key}")));
            found.push(Found {
                unit: field("unit")?,
                seq: field("seq")?,
                mu: field("mu")?,
                graph: parse_graph(&f["graph"].to_string())?,
            });
        }
        Ok(State { next_unit: num("next_unit")? as usize, explored: num("explored")?, pruned: num("pruned")?, found })
    }
}

fn write_checkpoint(path: &Path, state: &State, space: &SearchSpace) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string_pretty(&state.to_json(space))? + "\n";
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Full search with budget, worker count and checkpointing.
pub fn search_with(space: &SearchSpace, opts: &SearchOptions) -> Result<SearchResult> {
    let plan = Plan::new(space)?;

    let mut gen = Dfs::new(&plan, u64::MAX);
    gen.stop_at = Some(plan.split.min(plan.pairs.len()));
    gen.go(0);
    let units = std::mem::take(&mut gen.prefixes);

    let resumed = match &opts.checkpoint {
        Some(path) if opts.resume && path.exists() => {
            let text = std::fs::read_to_string(path)?;
            Some(State::from_json(&serde_json::from_str(&text)?, space)?)
        }
        _ => None,
    };
    let mut state = resumed.unwrap_or(State { next_unit: 0, explored: gen.ctr.nodes, pruned: gen.ctr.pruned, found: Vec::new() });

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;

    let mut complete = true;
    let mut last_checkpoint = state.explored;
    while state.next_unit < units.len() {
        if state.explored >= opts.budget {
            complete = false;
            break;
        }
        let remaining = opts.budget - state.explored;
        let end = (state.next_unit + BATCH).min(units.len());
        let outcomes: Vec<Result<UnitOutcome>> = pool.install(|| {
            (state.next_unit..end).into_par_iter().map(|u| run_unit(&plan, u, &units[u], remaining)).collect()
        });
        for outcome in outcomes {
            let outcome = outcome?;
            state.explored += outcome.nodes;
            state.pruned += outcome.pruned;
            if outcome.aborted || state.explored > opts.budget {
                complete = false;
                break;
            }
            state.found.extend(outcome.found);
            state.next_unit += 1;
        }
        state.keep_best();
        if let Some(path) = &opts.checkpoint {
            if !complete || state.explored - last_checkpoint >= opts.checkpoint_every || state.next_unit == units.len() {
                write_checkpoint(path, &state, space)?;
                last_checkpoint = state.explored;
            }
        }
        if !complete {
            break;
        }
    }

    state.found.sort_by_key(|f| (f.unit, f.seq));
    let best_mu = state.found.iter().map(|f| f.mu).max().unwrap_or(0);
    let mut seen = BTreeSet::new();
    let mut witnesses = Vec::new();
    for f in state.found {
        if space.up_to_iso {
            let key = if space.all_weightings { canonical_form(&f.graph)? } else { canonical_coloring_form(&f.graph)? };
            if !seen.insert(key) {
                continue;
            }
        }
        let order = (canonical_form(&f.graph)?, crate::io::serialize_graph(&f.graph));
        witnesses.push((order, f.graph));
    }
    witnesses.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SearchResult {
        best_mu,
        witnesses: witnesses.into_iter().map(|(_, g)| g).collect(),
        explored: state.explored,
        pruned: state.pruned,
        complete,
        units_done: state.next_unit,
        units_total: units.len(),
    })
}

/// Parses a weight alphabet given as a JSON array of weights.
pub fn parse_alphabet(v: &Value) -> Result<Vec<GaussianRational>> {
    v.as_array()
        .ok_or_else(|| Error::Input("weight alphabet must be an array".into()))?
        .iter()
        .map(weight_from_json)
        .collect()
}
