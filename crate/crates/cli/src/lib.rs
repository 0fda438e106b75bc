//! Generation, search, comparison and verification commands.
//!
//! Exit codes: 0 success, 1 failed verification or invalid arguments,
//! 2 missing input, 3 schema or dimension mismatch, 4 instance too large for
//! the oracle.

pub mod report;

use std::fmt;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mosagg_core::domains::{
    generate_inspection_instance, generate_ou_instance, generate_road_network, Bounds, InspectionSpec, OuSpec, RoadSpec,
};
use mosagg_core::oracle::{brute_force_pof, verify_eps_cover, EnumerationBudget};
use mosagg_core::search::{graph_distance_heuristic, mos_astar, Heuristic, SearchConfig, SearchMode, SearchResult};
use mosagg_core::{solution_cost, AggregationScheme, ApproxFactor, CostVector, Error, Instance, Path};

pub use report::{FrontierEntry, ReportStats, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MISSING_INPUT: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;
pub const EXIT_ORACLE_BUDGET: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_MISSING_INPUT,
            Error::EnumerationIncomplete(_) => EXIT_ORACLE_BUDGET,
            Error::DimensionMismatch { .. }
            | Error::UnknownScheme(_)
            | Error::Parse { .. }
            | Error::InvalidVertex { .. }
            | Error::MissingEdge { .. }
            | Error::Contract(_) => EXIT_SCHEMA,
            Error::NoCandidatePair => EXIT_FAIL,
        };
        let message = match &e {
            Error::EnumerationIncomplete(_) => format!("instance too large to verify ({e})"),
            _ => e.to_string(),
        };
        CliError::new(code, message)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "mosagg", version, about = "Multi-objective A* with objective aggregation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Run one search and print a JSON report.
    Run(RunArgs),
    /// Benchmark both modes over start/goal pairs and print CSV.
    Compare(CompareArgs),
    /// Check both modes, or a saved report, against brute-force enumeration.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Ou,
    Road,
    Inspection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Baseline,
    Objagg,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Baseline => SearchMode::Baseline,
            ModeArg::Objagg => SearchMode::ObjAgg,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HeuristicArg {
    /// shortest distances for additive objectives, reachability for coverage
    GraphDistance,
    /// zero for minimized objectives
    Zero,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub domain: Domain,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; defaults to `<domain>-<seed>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of start/goal candidate pairs to sample.
    #[arg(long, default_value_t = 20)]
    pub pairs: usize,

    /// [ou] number of uncertain obstacles; m = obstacles + 1
    #[arg(long, default_value_t = 8)]
    pub obstacles: usize,
    /// [ou] roadmap samples
    #[arg(long, default_value_t = 800)]
    pub samples: usize,
    /// [ou] roadmap connection radius; [inspection] too
    #[arg(long)]
    pub radius: Option<f64>,
    /// [ou] side of the square world
    #[arg(long, default_value_t = 10.0)]
    pub size: f64,
    #[arg(long, default_value_t = 30)]
    pub shadows: usize,
    #[arg(long, default_value_t = 0.05)]
    pub shadow_step: f64,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// [ou] edge-risk sampling resolution; defaults to shadow_step / 2
    #[arg(long)]
    pub resolution: Option<f64>,

    /// [road] grid rows
    #[arg(long, default_value_t = 45)]
    pub rows: usize,
    /// [road] grid columns
    #[arg(long, default_value_t = 45)]
    pub cols: usize,
    /// [road] probability that a non-arterial street is paved
    #[arg(long, default_value_t = 0.3)]
    pub paved_fraction: f64,

    /// [inspection] vertex count
    #[arg(long, default_value_t = 60)]
    pub vertices: usize,
    /// [inspection] points of interest; m = pois + 1
    #[arg(long, default_value_t = 4)]
    pub pois: usize,
    /// [inspection] probability that an edge senses a POI
    #[arg(long, default_value_t = 0.1)]
    pub density: f64,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Override the instance's scheme, e.g. `road-mlc`.
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long, value_enum, default_value_t = HeuristicArg::GraphDistance)]
    pub heuristic: HeuristicArg,
    /// Wall-clock limit in seconds.
    #[arg(long, env = "MOSAGG_TIMEOUT")]
    pub timeout: Option<f64>,
    /// Stop each search after this many expansions; reproducible, unlike
    /// `--timeout`.
    #[arg(long)]
    pub max_expansions: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Objagg)]
    pub mode: ModeArg,
    /// Approximation factor applied to every compared dimension.
    #[arg(long, default_value_t = 0.0, conflicts_with = "eps_per_dim")]
    pub eps: f64,
    /// Comma-separated approximation factor, one per compared dimension.
    #[arg(long, value_delimiter = ',')]
    pub eps_per_dim: Option<Vec<f64>>,
    /// Defaults to the first candidate pair of the instance.
    #[arg(long)]
    pub start: Option<usize>,
    #[arg(long)]
    pub goal: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// One or more instance files.
    #[arg(long = "instance", required = true, num_args = 1..)]
    pub instances: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "0,0.01,0.1")]
    pub eps_list: Vec<f64>,
    /// Number of candidate pairs per instance.
    #[arg(long, default_value_t = 20)]
    pub pairs: usize,
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long, value_enum, default_value_t = HeuristicArg::GraphDistance)]
    pub heuristic: HeuristicArg,
    #[arg(long, env = "MOSAGG_TIMEOUT")]
    pub timeout: Option<f64>,
    /// Stop each search after this many expansions; reproducible, unlike
    /// `--timeout`.
    #[arg(long)]
    pub max_expansions: Option<u64>,
    /// Worker threads; 1 keeps runtimes free of contention.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Approximation factor for the cover check.
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    #[arg(long)]
    pub start: Option<usize>,
    #[arg(long)]
    pub goal: Option<usize>,
    /// Check this saved report instead of fresh searches.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Oracle budget: maximum number of enumerated paths.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_paths: usize,
}

/// Runs a parsed command, writing human-facing output to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Run(a) => cmd_run(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    }
}

fn io_err(path: &FsPath, e: std::io::Error) -> CliError {
    CliError::new(EXIT_MISSING_INPUT, format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::new(EXIT_FAIL, e.to_string()))
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError::new(EXIT_FAIL, message)
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CliResult<i32> {
    let name = match a.domain {
        Domain::Ou => "ou",
        Domain::Road => "road",
        Domain::Inspection => "inspection",
    };
    let id = format!("{name}-{}", a.seed);
    let inst = match a.domain {
        Domain::Ou => {
            let spec = OuSpec {
                bounds: Bounds::square(a.size).map_err(|e| invalid(e.to_string()))?,
                num_obstacles: a.obstacles,
                num_shadows: a.shadows,
                shadow_step: a.shadow_step,
                sigma: a.sigma,
                prm_samples: a.samples,
                prm_radius: a.radius.unwrap_or(OuSpec::default().prm_radius),
                resolution: a.resolution,
                num_pairs: a.pairs,
                rng_seed: a.seed,
                ..OuSpec::default()
            };
            let ou = generate_ou_instance(&spec).map_err(|e| invalid(e.to_string()))?;
            Instance::from_ou(&id, &ou, a.seed)?
        }
        Domain::Road => {
            let spec = RoadSpec {
                rows: a.rows,
                cols: a.cols,
                paved_fraction: a.paved_fraction,
                num_pairs: a.pairs,
                rng_seed: a.seed,
                ..RoadSpec::default()
            };
            let (net, pairs) = generate_road_network(&spec).map_err(|e| invalid(e.to_string()))?;
            Instance::from_road(&id, &net, pairs, Some(a.seed))?
        }
        Domain::Inspection => {
            let spec = InspectionSpec {
                num_vertices: a.vertices,
                q: a.pois,
                coverage_density: a.density,
                radius: a.radius.unwrap_or(InspectionSpec::default().radius),
                num_pairs: a.pairs,
                rng_seed: a.seed,
            };
            let (ins, _) = generate_inspection_instance(&spec).map_err(|e| invalid(e.to_string()))?;
            Instance::from_inspection(&id, &ins, a.seed)?
        }
    };
    let path = a.out.clone().unwrap_or_else(|| PathBuf::from(format!("{id}.json")));
    std::fs::write(&path, inst.to_json()?).map_err(|e| io_err(&path, e))?;
    let scheme = inst.scheme()?;
    emit(
        out,
        &format!(
            "{}\n|V|={} |E|={} m={} d={} k={} scheme={} candidates={}\n",
            path.display(),
            inst.graph.num_vertices(),
            inst.graph.num_edges(),
            scheme.m(),
            scheme.d(),
            scheme.k(),
            inst.scheme,
            inst.candidates.len()
        ),
    )?;
    Ok(EXIT_OK)
}

/// Loads an instance and applies a scheme override.
pub fn load_instance(path: &FsPath, scheme: Option<&str>) -> CliResult<(Instance, AggregationScheme)> {
    if !path.exists() {
        return Err(CliError::new(EXIT_MISSING_INPUT, format!("{}: no such instance file", path.display())));
    }
    let mut inst = Instance::load(path)?;
    if let Some(name) = scheme {
        inst = Instance::new(inst.id, inst.domain, name, inst.seed, inst.graph, inst.positions, inst.candidates)?;
    }
    let scheme = inst.scheme()?;
    Ok((inst, scheme))
}

fn pick_pair(inst: &Instance, start: Option<usize>, goal: Option<usize>) -> CliResult<(usize, usize)> {
    let first = inst.candidates.first().copied();
    let s = start.or(first.map(|p| p.0));
    let g = goal.or(first.map(|p| p.1));
    match (s, g) {
        (Some(s), Some(g)) => {
            inst.graph.check_vertex(s)?;
            inst.graph.check_vertex(g)?;
            Ok((s, g))
        }
        _ => Err(invalid("instance has no candidate pairs; pass --start and --goal")),
    }
}

pub fn build_heuristic(
    inst: &Instance,
    goal: usize,
    scheme: &AggregationScheme,
    kind: HeuristicArg,
) -> CliResult<Heuristic> {
    Ok(match kind {
        HeuristicArg::GraphDistance => graph_distance_heuristic(&inst.graph, goal, scheme)?,
        HeuristicArg::Zero => Heuristic::uninformed(&inst.graph, goal, scheme),
    })
}

/// Per-search stopping limits.
#[derive(Clone, Copy, Debug)]
struct Limits {
    time: Option<Duration>,
    expansions: Option<u64>,
}

fn limits(secs: Option<f64>, expansions: Option<u64>) -> CliResult<Limits> {
    let time = secs
        .map(|s| Duration::try_from_secs_f64(s).map_err(|_| invalid(format!("invalid timeout {s}"))))
        .transpose()?;
    Ok(Limits { time, expansions })
}

#[allow(clippy::too_many_arguments)]
fn search(
    inst: &Instance,
    scheme: &AggregationScheme,
    heuristic: &Heuristic,
    mode: SearchMode,
    eps: ApproxFactor,
    start: usize,
    goal: usize,
    limit: Limits,
) -> CliResult<SearchResult> {
    let cfg = SearchConfig { mode, eps, timeout: limit.time, max_expansions: limit.expansions };
    Ok(mos_astar(&inst.graph, start, goal, scheme, heuristic, &cfg)?)
}

pub fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (inst, scheme) = load_instance(&a.search.instance, a.search.scheme.as_deref())?;
    let mode: SearchMode = a.mode.into();
    let eps = match &a.eps_per_dim {
        Some(list) => ApproxFactor::new(list.clone()).map_err(|e| invalid(e.to_string()))?,
        None => ApproxFactor::uniform(a.eps, mode.compared_dim(&scheme)).map_err(|e| invalid(e.to_string()))?,
    };
    if eps.dim() != mode.compared_dim(&scheme) {
        return Err(CliError::new(
            EXIT_SCHEMA,
            format!(
                "--eps-per-dim has {} values but {} mode compares {} dimensions",
                eps.dim(),
                mode.name(),
                mode.compared_dim(&scheme)
            ),
        ));
    }
    let (start, goal) = pick_pair(&inst, a.start, a.goal)?;
    let h = build_heuristic(&inst, goal, &scheme, a.search.heuristic)?;
    let result =
        search(&inst, &scheme, &h, mode, eps.clone(), start, goal, limits(a.search.timeout, a.search.max_expansions)?)?;
    let report =
        RunReport::from_result(&inst.id, &scheme.name(), mode, eps.as_slice(), start, goal, inst.seed, &result);
    match &a.out {
        Some(path) => std::fs::write(path, report.to_json()).map_err(|e| io_err(path, e))?,
        None => emit(out, &report.to_json())?,
    }
    Ok(EXIT_OK)
}

/// One row of the comparison table.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub instance: String,
    pub start: usize,
    pub goal: usize,
    pub eps: f64,
    pub mode: SearchMode,
    pub runtime_s: f64,
    pub expansions: u64,
    pub frontier: usize,
    pub timed_out: bool,
}

pub const CSV_HEADER: &str = "instance,pair,eps,mode,runtime_s,expansions,frontier,timed_out";

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Summary line per eps: median over pairs of baseline / objagg runtime.
/// A timed-out baseline makes its ratio a lower bound, flagged with `>=`.
pub fn speedup_rows(rows: &[CompareRow], eps_list: &[f64]) -> Vec<String> {
    let mut out = Vec::new();
    for &eps in eps_list {
        let mut ratios = Vec::new();
        let mut exp_ratios = Vec::new();
        let mut lower_bound = false;
        for b in rows.iter().filter(|r| r.eps == eps && r.mode == SearchMode::Baseline) {
            let Some(o) = rows.iter().find(|r| {
                r.eps == eps
                    && r.mode == SearchMode::ObjAgg
                    && r.instance == b.instance
                    && (r.start, r.goal) == (b.start, b.goal)
            }) else {
                continue;
            };
            ratios.push(b.runtime_s / o.runtime_s.max(1e-9));
            exp_ratios.push(b.expansions as f64 / (o.expansions.max(1)) as f64);
            lower_bound |= b.timed_out;
        }
        if ratios.is_empty() {
            continue;
        }
        let prefix = if lower_bound { ">=" } else { "" };
        out.push(format!(
            "summary,all,{eps},speedup,{prefix}{:.3},{:.3},,{lower_bound}",
            median(ratios),
            median(exp_ratios)
        ));
    }
    out
}

pub fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> CliResult<i32> {
    let limit = limits(a.timeout, a.max_expansions)?;
    let mut cells = Vec::new();
    let mut loaded = Vec::new();
    for path in &a.instances {
        let (inst, scheme) = load_instance(path, a.scheme.as_deref())?;
        if inst.candidates.is_empty() {
            return Err(invalid(format!("{}: instance has no candidate pairs", path.display())));
        }
        let idx = loaded.len();
        for &(s, g) in inst.candidates.iter().take(a.pairs) {
            for &eps in &a.eps_list {
                for mode in [SearchMode::Baseline, SearchMode::ObjAgg] {
                    cells.push((idx, s, g, eps, mode));
                }
            }
        }
        loaded.push((inst, scheme));
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(a.threads.max(1)).build().map_err(|e| invalid(e.to_string()))?;
    // par_iter().collect() keeps cell order regardless of scheduling
    let rows: Vec<CliResult<CompareRow>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(idx, s, g, eps, mode)| {
                let (inst, scheme) = &loaded[idx];
                let h = build_heuristic(inst, g, scheme, a.heuristic)?;
                let eps_v =
                    ApproxFactor::uniform(eps, mode.compared_dim(scheme)).map_err(|e| invalid(e.to_string()))?;
                let r = search(inst, scheme, &h, mode, eps_v, s, g, limit)?;
                Ok(CompareRow {
                    instance: inst.id.clone(),
                    start: s,
                    goal: g,
                    eps,
                    mode,
                    runtime_s: r.stats.runtime_s,
                    expansions: r.stats.expansions,
                    frontier: r.frontier.len(),
                    timed_out: r.timed_out,
                })
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in &rows {
        text.push_str(&format!(
            "{},{}-{},{},{},{:.6},{},{},{}\n",
            r.instance,
            r.start,
            r.goal,
            r.eps,
            r.mode.name(),
            r.runtime_s,
            r.expansions,
            r.frontier,
            r.timed_out
        ));
    }
    for line in speedup_rows(&rows, &a.eps_list) {
        text.push_str(&line);
        text.push('\n');
    }
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_err(path, e))?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn costs_of(entries: &[FrontierEntry]) -> CliResult<Vec<(CostVector, ())>> {
    entries.iter().map(|e| Ok((CostVector::new(e.cost.clone())?, ()))).collect()
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (inst, scheme) = load_instance(&a.search.instance, a.search.scheme.as_deref())?;
    let report = match &a.report {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            Some(
                RunReport::from_json(&text)
                    .map_err(|e| CliError::new(EXIT_SCHEMA, format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    let (start, goal) = match &report {
        Some(r) => (r.start, r.goal),
        None => pick_pair(&inst, a.start, a.goal)?,
    };
    let budget = EnumerationBudget { max_paths: a.max_paths, ..EnumerationBudget::default_for(&inst.graph) };
    let exact = brute_force_pof(&inst.graph, start, goal, &scheme, budget)?;
    let mut checks: Vec<(String, bool)> = Vec::new();

    if let Some(r) = &report {
        if r.timed_out {
            checks.push(("report did not time out".into(), false));
        }
        let mut realized = true;
        for e in &r.frontier {
            let ok = Path::new(&inst.graph, e.path.clone())
                .ok()
                .filter(|p| p.first() == start && p.last() == goal)
                .and_then(|p| solution_cost(&p, &inst.graph, &scheme).ok())
                .is_some_and(|c| c.as_slice() == e.cost.as_slice());
            realized &= ok;
        }
        checks.push(("report paths realize their costs".into(), realized));
        let claimed = mosagg_core::vector::pareto_filter(costs_of(&r.frontier)?)?;
        let eps_k = if r.mode == SearchMode::ObjAgg.name() && r.eps.len() == scheme.k() {
            ApproxFactor::new(r.eps.clone())?
        } else {
            ApproxFactor::uniform(r.eps.iter().cloned().fold(0.0, f64::max), scheme.k())?
        };
        if eps_k.is_exact() {
            checks.push(("report frontier equals oracle".into(), claimed.sorted_costs() == exact.sorted_costs()));
        } else {
            checks.push((
                format!("report frontier covers oracle at eps={:?}", eps_k.as_slice()),
                verify_eps_cover(&exact, &claimed, &eps_k)?,
            ));
        }
        checks.push(("report frontier is mutually non-dominated".into(), claimed.len() == r.frontier.len()));
    } else {
        let limit = limits(a.search.timeout, a.search.max_expansions)?;
        let h = build_heuristic(&inst, goal, &scheme, a.search.heuristic)?;
        for mode in [SearchMode::ObjAgg, SearchMode::Baseline] {
            let dim = mode.compared_dim(&scheme);
            let exact_run = search(&inst, &scheme, &h, mode, ApproxFactor::exact(dim), start, goal, limit)?;
            checks.push((
                format!("{} eps=0 equals oracle", mode.name()),
                !exact_run.timed_out && exact_run.frontier.sorted_costs() == exact.sorted_costs(),
            ));
            let eps = ApproxFactor::uniform(a.eps, dim).map_err(|e| invalid(e.to_string()))?;
            let approx = search(&inst, &scheme, &h, mode, eps, start, goal, limit)?;
            let eps_k = ApproxFactor::uniform(a.eps, scheme.k()).map_err(|e| invalid(e.to_string()))?;
            checks.push((
                format!("{} eps={} covers oracle", mode.name(), a.eps),
                !approx.timed_out && verify_eps_cover(&exact, &approx.frontier, &eps_k)?,
            ));
        }
    }

    let mut text = format!("oracle frontier: {} points ({start} -> {goal})\n", exact.len());
    for (name, ok) in &checks {
        text.push_str(&format!("{} {name}\n", if *ok { "PASS" } else { "FAIL" }));
    }
    emit(out, &text)?;
    Ok(if checks.iter().all(|c| c.1) { EXIT_OK } else { EXIT_FAIL })
}
