//! The `xgraph` command line.
//!
//! Exit codes: 0 success or valid, 1 invalid graph / violated check / nothing
//! found, 2 usage, input or resource error (with a diagnostic on stderr).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::certificate::certificate_report_for;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::ExperimentGraph;
use crate::io::{export_dot, graph_to_json, parse_graph, parse_graph_approx, serialize_graph};
use crate::matching::weight_table;
use crate::poly::polynomial_system;
use crate::search::{alphabet_i4, alphabet_pm1, search_with, SearchOptions, SearchSpace, DEFAULT_BUDGET, DEFAULT_CHECKPOINT_EVERY};
use crate::sparsify::{prune_to_fixpoint_with, Paranoia};
use crate::validity::{verdict_from_table, verify_approx, DimensionReport};

#[derive(Debug, Parser)]
#[command(name = "xgraph", version, about = "Verify, prune, certify and search experiment graphs")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check validity and print the weight table.
    Verify(CheckArgs),
    /// Print the dimension and how it compares to n/√2 and n/2.
    Dim(CheckArgs),
    /// Remove edges with the pruning rules until none applies.
    Prune(PruneArgs),
    /// Evaluate the structural certificates of a valid graph.
    Certify(CertifyArgs),
    /// Search for valid graphs of maximum dimension.
    Search(SearchArgs),
    /// Write the graph in Graphviz format.
    ExportDot(ExportArgs),
    /// Write the validity conditions as polynomial equations.
    ExportPoly(ExportArgs),
}

#[derive(Debug, Args)]
pub struct JsonOut {
    /// Machine-readable output, to FILE or (without FILE) to stdout.
    #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    /// Use floating-point weights instead of exact arithmetic.
    #[arg(long)]
    pub float: bool,
    /// Tolerance for --float.
    #[arg(long, requires = "float")]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub out: JsonOut,
}

#[derive(Debug, Args)]
pub struct PruneArgs {
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Write the pruning trace as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Re-verify after every pruning step regardless of size.
    #[arg(long)]
    pub paranoid: bool,
    #[command(flatten)]
    pub out: JsonOut,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub input: PathBuf,
    /// Only run the per-color checks for this color label.
    #[arg(long)]
    pub color: Option<usize>,
    #[command(flatten)]
    pub out: JsonOut,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    /// Maximum number of colors.
    #[arg(long)]
    pub colors: usize,
    /// `pm1`, `i4`, or a comma-separated list such as `1,-1,1/2+i`.
    #[arg(long, default_value = "i4")]
    pub weights: String,
    #[arg(long)]
    pub mono_only: bool,
    #[arg(long)]
    pub up_to_iso: bool,
    /// Only consider graphs of at least this dimension.
    #[arg(long, default_value_t = 1)]
    pub min_dim: usize,
    /// Fix the edge set to that of this graph.
    #[arg(long)]
    pub skeleton: Option<PathBuf>,
    /// Report every valid weighting instead of one per coloring.
    #[arg(long)]
    pub all_weightings: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Checkpoint file; resumed from if it exists.
    #[arg(long, value_name = "CKPT")]
    pub resume: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CHECKPOINT_EVERY)]
    pub checkpoint_every: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub out: JsonOut,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub out: JsonOut,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            e.exit_code()
        }
    }
}

pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Verify(a) => verify_cmd(a, out),
        Command::Dim(a) => dim_cmd(a, out),
        Command::Prune(a) => prune_cmd(a, out),
        Command::Certify(a) => certify_cmd(a, out),
        Command::Search(a) => search_cmd(a, out, err),
        Command::ExportDot(a) => export_cmd(a, out, |g| Ok(export_dot(g)), |text| json!({ "dot": text })),
        Command::ExportPoly(a) => export_cmd(
            a,
            out,
            |g| Ok(polynomial_system(g)?.to_string()),
            |text| json!({ "equations": text.lines().collect::<Vec<_>>() }),
        ),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "xgraph: {e}");
            match e {
                Error::InvalidGraph(_) => 1,
                _ => 2,
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<ExperimentGraph> {
    parse_graph(&read_text(path)?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

/// Writes `value` per `--json`. Returns true when human output should be
/// suppressed (JSON went to stdout).
fn emit_json(dest: &JsonOut, value: impl FnOnce() -> Value, out: &mut dyn Write) -> Result<bool> {
    match &dest.json {
        None => Ok(false),
        Some(p) if p.as_os_str() == "-" => {
            out.write_all(pretty(&value()).as_bytes())?;
            Ok(true)
        }
        Some(p) => {
            write_file(p, &pretty(&value()))?;
            Ok(false)
        }
    }
}

fn verify_cmd(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    if a.float {
        let (g, weights) = parse_graph_approx(&read_text(&a.input)?)?;
        let v = verify_approx(&g, &weights, a.eps.unwrap_or(1e-9))?;
        if !emit_json(&a.out, || v.to_json(&g), out)? {
            writeln!(out, "valid: {}", yes_no(v.is_valid))?;
            writeln!(out, "mu: {}", v.mu)?;
            writeln!(out, "perfect matchings: {}", v.matching_count)?;
            writeln!(out, "tolerance: {:e}", v.eps)?;
            for (vc, w) in &v.violations {
                writeln!(out, "violation: {} weight {:.6}{:+.6}i", g.ket(vc), w.re, w.im)?;
            }
        }
        return Ok(if v.is_valid { 0 } else { 1 });
    }
    let g = read(&a.input)?;
    let table = weight_table(&g)?;
    let v = verdict_from_table(&g, &table);
    let json = || {
        let mut j = v.to_json(&g);
        j["weight_table"] = table.to_json(&g);
        j
    };
    if !emit_json(&a.out, json, out)? {
        writeln!(out, "valid: {}", yes_no(v.is_valid))?;
        writeln!(out, "mu: {}", v.mu)?;
        if v.vacuous {
            writeln!(out, "vacuous: no feasible monochromatic coloring")?;
        }
        writeln!(out, "perfect matchings: {}", v.matching_count)?;
        writeln!(out, "weight table:")?;
        for (vc, e) in table.iter() {
            let s = if e.matching_count == 1 { "" } else { "s" };
            writeln!(out, "  {}  {}  ({} matching{s})", g.ket(vc), e.weight, e.matching_count)?;
        }
        for (vc, w) in &v.violations {
            let want = if vc.is_monochromatic() { 1 } else { 0 };
            writeln!(out, "violation: {} has weight {w}, expected {want}", g.ket(vc))?;
        }
    }
    Ok(if v.is_valid { 0 } else { 1 })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dim_cmd(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let (n, valid, mu) = if a.float {
        let (g, weights) = parse_graph_approx(&read_text(&a.input)?)?;
        let v = verify_approx(&g, &weights, a.eps.unwrap_or(1e-9))?;
        (g.vertex_count(), v.is_valid, v.mu)
    } else {
        let g = read(&a.input)?;
        let v = verdict_from_table(&g, &weight_table(&g)?);
        (g.vertex_count(), v.is_valid, v.mu)
    };
    let r = DimensionReport::new(n, mu);
    let json = || {
        let mut j = serde_json::to_value(&r).expect("report serializes");
        j["valid"] = json!(valid);
        j
    };
    if !emit_json(&a.out, json, out)? {
        writeln!(out, "valid: {}", yes_no(valid))?;
        writeln!(out, "n: {n}")?;
        writeln!(out, "mu: {mu}")?;
        let scope = if r.bounds_apply { "" } else { " (bounds claimed only for n > 4)" };
        writeln!(out, "2mu^2 <= n^2: {} <= {}: {}{scope}", r.two_mu_squared, r.n_squared, holds(r.sqrt2_bound_holds))?;
        writeln!(out, "2mu < n: {} < {}: {}{scope}", r.two_mu, n, holds(r.half_bound_holds))?;
    }
    Ok(if valid { 0 } else { 1 })
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn prune_cmd(a: &PruneArgs, out: &mut dyn Write) -> Result<i32> {
    let g = read(&a.input)?;
    let paranoia = if a.paranoid { Paranoia::Always } else { Paranoia::Auto };
    let (pruned, trace) = prune_to_fixpoint_with(&g, paranoia)?;
    let mu = crate::validity::dimension(&pruned)?;
    write_file(&a.output, &serialize_graph(&pruned))?;
    if let Some(t) = &a.trace {
        write_file(t, &pretty(&trace.to_json(&g)))?;
    }
    let json = || {
        json!({
            "edges_before": g.edge_count(),
            "edges_after": pruned.edge_count(),
            "steps": trace.len(),
            "mu": mu,
            "output": a.output.display().to_string(),
        })
    };
    if !emit_json(&a.out, json, out)? {
        writeln!(
            out,
            "{} -> {} edges in {} steps, mu = {mu}",
            g.edge_count(),
            pruned.edge_count(),
            trace.len()
        )?;
    }
    Ok(0)
}

fn certify_cmd(a: &CertifyArgs, out: &mut dyn Write) -> Result<i32> {
    let g = read(&a.input)?;
    let color = match a.color {
        None => None,
        Some(label) => Some(
            g.color_of_label(label).ok_or_else(|| Error::Input(format!("color {label} does not occur in the graph")))?,
        ),
    };
    let report = certificate_report_for(&g, color)?;
    if !emit_json(&a.out, || report.to_json(), out)? {
        write!(out, "{report}")?;
    }
    Ok(if report.all_hold() { 0 } else { 1 })
}

pub fn parse_weights(spec: &str) -> Result<Vec<GaussianRational>> {
    match spec {
        "pm1" => Ok(alphabet_pm1()),
        "i4" => Ok(alphabet_i4()),
        _ => spec.split(',').map(|s| s.trim().parse::<GaussianRational>()).collect(),
    }
}

fn search_cmd(a: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let space = SearchSpace {
        n: a.n,
        max_colors: a.colors,
        weight_alphabet: parse_weights(&a.weights)?,
        mono_only: a.mono_only,
        up_to_iso: a.up_to_iso,
        base_graph: a.skeleton.as_deref().map(read).transpose()?,
        min_mu: a.min_dim,
        all_weightings: a.all_weightings,
    };
    let opts = SearchOptions {
        budget: a.budget,
        workers: a.workers,
        checkpoint: a.resume.clone(),
        checkpoint_every: a.checkpoint_every,
        resume: a.resume.is_some(),
    };
    let r = search_with(&space, &opts)?;
    if !emit_json(&a.out, || r.to_json(&space), out)? {
        writeln!(out, "best mu: {}", r.best_mu)?;
        writeln!(out, "witnesses: {}", r.witnesses.len())?;
        writeln!(out, "explored: {}, pruned: {}", r.explored, r.pruned)?;
        writeln!(out, "units: {}/{}", r.units_done, r.units_total)?;
        writeln!(out, "complete: {}", yes_no(r.complete))?;
        for w in &r.witnesses {
            writeln!(out, "{}", serde_json::to_string(&graph_to_json(w)).expect("JSON values serialize"))?;
        }
    }
    if !r.complete {
        writeln!(err, "xgraph: node budget of {} exhausted; result is partial", a.budget)?;
        return Ok(2);
    }
    Ok(if r.witnesses.is_empty() { 1 } else { 0 })
}

fn export_cmd(
    a: &ExportArgs,
    out: &mut dyn Write,
    render: impl Fn(&ExperimentGraph) -> Result<String>,
    wrap: impl Fn(&str) -> Value,
) -> Result<i32> {
    let g = read(&a.input)?;
    let text = render(&g)?;
    let json_to_stdout = emit_json(&a.out, || wrap(&text), out)?;
    match &a.output {
        Some(p) => write_file(p, &text)?,
        None if !json_to_stdout => out.write_all(text.as_bytes())?,
        None => {}
    }
    Ok(0)
}
