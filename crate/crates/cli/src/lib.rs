//! Argument parsing and report generation for the `spex` binary.
//!
//! [`parse_invocation`] validates every flag (and loads input files) before
//! anything is computed; [`execute`] runs the command and returns the whole
//! report, so nothing reaches stdout when a run fails.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spectral_extremal::eigen::{adjacency_matrix, eigh};
use spectral_extremal::graph::{complete_split, named_graph, parse_graph, pendant_clique, CanonicalForm, Family, Graph};
use spectral_extremal::graphon::{common_refinement_diff, cut_norm, delta_cut_upper, max_eigen, StepGraphon};
use spectral_extremal::search::{
    exhaustive_ng, exhaustive_qspread, local_search, random_connected_graph, random_graph, ExhaustiveOptions,
    MaximizerSet, Objective, DEFAULT_MAX_EXHAUSTIVE_ORDER, MAX_ENUMERATION_ORDER,
};
use spectral_extremal::spectral::{asymptotic_diagnostics, cs_ng_sum, ng_bound, optimal_clique, DEFAULT_EPSILON};
use spectral_extremal::Error;

/// Exit status for a run that finished but contradicts the conjectured extremal.
pub const EXIT_FINDING: i32 = 3;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 1;

/// Values closer to zero than this print as `0` in CSV.
const CSV_ZERO: f64 = 1e-9;
const AGREEMENT: f64 = 1e-9;
const LIMIT_TOLERANCE: f64 = 1e-12;
const MAX_GRAPH_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ng,
    Qspread,
}

impl From<Mode> for Objective {
    fn from(m: Mode) -> Objective {
        match m {
            Mode::Ng => Objective::Ng,
            Mode::Qspread => Objective::Qspread,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "spex", version, about = "Spectral extremal graph verification and search")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    output: OutputFormat,

    /// Base seed for random starts and samples; echoed in the report.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Exhaustively find all maximizers of λ₁(G) + λ₁(Ḡ) on n vertices.
    VerifyNg {
        #[arg(long)]
        n: usize,
        /// Visit every labeled graph instead of one per complementary pair.
        #[arg(long)]
        full_scan: bool,
        /// Permit n = 8 (hours of compute).
        #[arg(long)]
        allow_n8: bool,
    },
    /// Exhaustively find the extremes of q₁ − qₙ over connected graphs.
    VerifyQspread {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        allow_n8: bool,
    },
    /// Closed-form bound against the complete split graph, one row per n.
    BoundTable {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Eigenvector-guided edge toggling from seeded random starts.
    SearchLocal {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        starts: usize,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Graphon checks.
    GraphonCheck {
        #[command(subcommand)]
        check: GraphonCommand,
    },
    /// Spectral diagnostics of one graph.
    Diag(DiagArgs),
}

#[derive(Subcommand, Debug)]
enum GraphonCommand {
    /// Eigenpairs of the split-graph limit and its complement.
    #[command(name = "theorem34", alias = "limit")]
    LimitEigen,
    /// Compare λ₁(G) with n·μ(W_G) on seeded random graphs.
    Relation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Cut norm of the difference of two inputs and a cut distance bound.
    Cutnorm { left: PathBuf, right: PathBuf },
}

#[derive(Args, Debug)]
struct DiagArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

/// A validated command with its inputs loaded.
#[derive(Clone, Debug)]
pub enum Command {
    VerifyNg { n: usize, full_scan: bool, allow_n8: bool },
    VerifyQspread { n: usize, allow_n8: bool },
    BoundTable { n_min: usize, n_max: usize },
    SearchLocal { mode: Mode, n: usize, starts: usize, max_steps: usize },
    LimitEigen,
    Relation { n: usize, samples: usize },
    Cutnorm { left: Input, right: Input },
    Diag { source: String, graph: Graph, epsilon: f64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyNg { .. } => "verify-ng",
            Command::VerifyQspread { .. } => "verify-qspread",
            Command::BoundTable { .. } => "bound-table",
            Command::SearchLocal { .. } => "search-local",
            Command::LimitEigen => "graphon-check theorem34",
            Command::Relation { .. } => "graphon-check relation",
            Command::Cutnorm { .. } => "graphon-check cutnorm",
            Command::Diag { .. } => "diag",
        }
    }
}

/// A graphon read from a file: either a step graphon or a graph's step form.
#[derive(Clone, Debug)]
pub struct Input {
    pub source: String,
    pub graphon: StepGraphon,
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub command: Command,
    pub output: OutputFormat,
    pub seed: u64,
    pub jobs: Option<usize>,
}

/// Finished report and its exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub code: i32,
}

/// Parses arguments (without the program name).
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("spex")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args)?;
    let usage = |msg: String| Cli::command().error(ErrorKind::ValueValidation, msg);

    if cli.jobs == Some(0) {
        return Err(usage("--jobs: must be at least 1".into()));
    }
    let exhaustive_n = |n: usize, allow_n8: bool| {
        let cap = if allow_n8 { MAX_ENUMERATION_ORDER } else { DEFAULT_MAX_EXHAUSTIVE_ORDER };
        if n < 3 {
            Err(usage(format!("--n: {n} is below the minimum order 3")))
        } else if n > cap {
            let hint = if allow_n8 { "" } else { " (--allow-n8 raises it to 8)" };
            Err(usage(format!("--n: {n} exceeds the enumeration cap of {cap}{hint}")))
        } else {
            Ok(n)
        }
    };

    let command = match cli.command {
        CliCommand::VerifyNg { n, full_scan, allow_n8 } => Command::VerifyNg {
            n: exhaustive_n(n, allow_n8)?,
            full_scan,
            allow_n8,
        },
        CliCommand::VerifyQspread { n, allow_n8 } => Command::VerifyQspread {
            n: exhaustive_n(n, allow_n8)?,
            allow_n8,
        },
        CliCommand::BoundTable { n_min, n_max } => {
            if n_min < 3 {
                return Err(usage(format!("--n-min: {n_min} is below the minimum order 3")));
            }
            if n_max < n_min {
                return Err(usage(format!("--n-max: {n_max} is smaller than --n-min {n_min}")));
            }
            Command::BoundTable { n_min, n_max }
        }
        CliCommand::SearchLocal { mode, n, starts, max_steps } => {
            if !(3..=MAX_GRAPH_ORDER).contains(&n) {
                return Err(usage(format!("--n: {n} outside 3..={MAX_GRAPH_ORDER}")));
            }
            if starts == 0 {
                return Err(usage("--starts: must be at least 1".into()));
            }
            Command::SearchLocal { mode, n, starts, max_steps }
        }
        CliCommand::GraphonCheck { check } => match check {
            GraphonCommand::LimitEigen => Command::LimitEigen,
            GraphonCommand::Relation { n, samples } => {
                if !(1..=MAX_GRAPH_ORDER).contains(&n) {
                    return Err(usage(format!("--n: {n} outside 1..={MAX_GRAPH_ORDER}")));
                }
                if samples == 0 {
                    return Err(usage("--samples: must be at least 1".into()));
                }
                Command::Relation { n, samples }
            }
            GraphonCommand::Cutnorm { left, right } => Command::Cutnorm {
                left: load_input(&left).map_err(&usage)?,
                right: load_input(&right).map_err(&usage)?,
            },
        },
        CliCommand::Diag(DiagArgs { graph, epsilon }) => {
            if !(epsilon.is_finite() && epsilon > 0.0) {
                return Err(usage(format!("--epsilon: {epsilon} must be positive")));
            }
            let text = read(&graph).map_err(|e| usage(format!("--graph: {e}")))?;
            let g = parse_graph(&text).map_err(|e| usage(format!("--graph: {}: {e}", graph.display())))?;
            Command::Diag {
                source: graph.display().to_string(),
                graph: g,
                epsilon,
            }
        }
    };
    Ok(Invocation {
        command,
        output: cli.output,
        seed: cli.seed,
        jobs: cli.jobs,
    })
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Step graphon JSON (`{"m": …, "values": …}`) or a graph in graph6 or
/// edge-list JSON.
fn load_input(path: &Path) -> Result<Input, String> {
    let text = read(path)?;
    let source = path.display().to_string();
    let as_graphon = serde_json::from_str::<Value>(&text)
        .ok()
        .filter(|v| v.get("m").is_some() && v.get("values").is_some());
    let graphon = match as_graphon {
        Some(v) => serde_json::from_value::<StepGraphon>(v).map_err(|e| format!("{source}: {e}"))?,
        None => StepGraphon::from_graph(&parse_graph(&text).map_err(|e| format!("{source}: {e}"))?),
    };
    Ok(Input { source, graphon })
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::SizeLimit { .. } | Error::Parse(_) => EXIT_USAGE,
        Error::NumericFailure { .. } => EXIT_FAILURE,
    }
}

/// Runs the command and renders the report.
pub fn execute(inv: &Invocation) -> Result<Outcome, Error> {
    let (body, table, agrees) = match &inv.command {
        Command::VerifyNg { n, full_scan, allow_n8 } => verify_ng(*n, *full_scan, *allow_n8)?,
        Command::VerifyQspread { n, allow_n8 } => verify_qspread(*n, *allow_n8)?,
        Command::BoundTable { n_min, n_max } => bound_table(*n_min, *n_max)?,
        Command::SearchLocal { mode, n, starts, max_steps } => {
            search(*mode, *n, *starts, *max_steps, inv.seed)?
        }
        Command::LimitEigen => limit_eigen()?,
        Command::Relation { n, samples } => relation(*n, *samples, inv.seed)?,
        Command::Cutnorm { left, right } => cutnorm(left, right),
        Command::Diag { source, graph, epsilon } => diag(source, graph, *epsilon)?,
    };
    let report = match inv.output {
        OutputFormat::Json => {
            let doc = Report {
                command: inv.command.name(),
                seed: inv.seed,
                body,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => table.render(inv.command.name(), inv.seed),
    };
    Ok(Outcome {
        report,
        code: if agrees { 0 } else { EXIT_FINDING },
    })
}

/// JSON report: the replay header first, then the command's fields.
#[derive(Serialize)]
struct Report {
    command: &'static str,
    seed: u64,
    #[serde(flatten)]
    body: Value,
}

/// Plot-ready rows behind a `# command seed=…` line.
struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, command: &str, seed: u64) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8");
        format!("# {command} seed={seed}\n{body}")
    }
}

/// Nine significant digits, trailing zeros dropped, near-zero values as `0`.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < CSV_ZERO {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Serialize)]
struct GraphEntry {
    graph6: String,
    edges: Vec<[usize; 2]>,
    label: Option<String>,
}

fn entry(form: &CanonicalForm, named: &[(String, CanonicalForm)]) -> GraphEntry {
    let g = form.to_graph();
    GraphEntry {
        graph6: form.to_graph6(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        label: named.iter().find(|(_, f)| f == form).map(|(name, _)| name.clone()),
    }
}

fn canonical(g: &Graph) -> CanonicalForm {
    spectral_extremal::graph::canonical_form(g).expect("order within canonical range")
}

/// Conjectured NG maximizers with their names.
fn ng_extremals(n: usize) -> Result<Vec<(String, CanonicalForm)>, Error> {
    let mut out = Vec::new();
    for w in optimal_clique(n)? {
        let cs = complete_split(n, w)?;
        out.push((format!("CS({n},{w})"), canonical(&cs)));
        out.push((format!("complement of CS({n},{w})"), canonical(&cs.complement())));
    }
    out.sort_by_key(|(_, f)| *f);
    out.dedup_by_key(|(_, f)| *f);
    Ok(out)
}

fn forms_of(named: &[(String, CanonicalForm)]) -> Vec<CanonicalForm> {
    let mut v: Vec<CanonicalForm> = named.iter().map(|(_, f)| *f).collect();
    v.sort();
    v
}

type Rendered = (Value, Table, bool);

fn verify_ng(n: usize, full_scan: bool, allow_n8: bool) -> Result<Rendered, Error> {
    let set = exhaustive_ng(n, ExhaustiveOptions { full_scan, allow_order_8: allow_n8 })?;
    let named = ng_extremals(n)?;
    let bound = ng_bound(n);
    let holds = set.maximizers == forms_of(&named) && (set.best_value - bound).abs() <= AGREEMENT;
    let entries: Vec<GraphEntry> = set.maximizers.iter().map(|f| entry(f, &named)).collect();
    let rows = entries
        .iter()
        .map(|e| vec![e.graph6.clone(), e.label.clone().unwrap_or_default(), fmt_num(set.best_value)])
        .collect();
    let body = json!({
        "n": n,
        "best_value": set.best_value,
        "bound": bound,
        "conjecture_holds": holds,
        "full_scan": full_scan,
        "graphs_scanned": set.graphs_scanned,
        "maximizers": entries,
        "expected": named.iter().map(|(name, f)| json!({"label": name, "graph6": f.to_graph6()})).collect::<Vec<_>>(),
    });
    let table = Table {
        columns: &["graph6", "label", "p"],
        rows,
    };
    Ok((body, table, holds))
}

fn extremes_json(set: &MaximizerSet, named: &[(String, CanonicalForm)]) -> Value {
    json!({
        "value": set.best_value,
        "graphs": set.maximizers.iter().map(|f| entry(f, named)).collect::<Vec<_>>(),
    })
}

fn verify_qspread(n: usize, allow_n8: bool) -> Result<Rendered, Error> {
    let r = exhaustive_qspread(n, ExhaustiveOptions { full_scan: false, allow_order_8: allow_n8 })?;
    let named = vec![
        (format!("K{}+", n - 1), canonical(&pendant_clique(n)?)),
        (format!("P{n}"), canonical(&named_graph(Family::Path, n)?)),
        (format!("C{n}"), canonical(&named_graph(Family::Cycle, n)?)),
    ];
    // The conjectured maximizer is stated for n ≥ 6 only.
    let applies = n >= 6;
    let holds = !applies || r.maximizers.maximizers == vec![named[0].1];
    let mut rows = Vec::new();
    for (kind, set) in [("max", &r.maximizers), ("min", &r.minimizers)] {
        for f in &set.maximizers {
            let e = entry(f, &named);
            rows.push(vec![kind.to_string(), e.graph6, e.label.unwrap_or_default(), fmt_num(set.best_value)]);
        }
    }
    let body = json!({
        "n": n,
        "conjecture_applies": applies,
        "conjecture_holds": if applies { Some(holds) } else { None },
        "graphs_scanned": r.maximizers.graphs_scanned,
        "maximizers": extremes_json(&r.maximizers, &named),
        "minimizers": extremes_json(&r.minimizers, &named),
    });
    let table = Table {
        columns: &["kind", "graph6", "label", "s_q"],
        rows,
    };
    Ok((body, table, holds))
}

fn bound_table(n_min: usize, n_max: usize) -> Result<Rendered, Error> {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut agrees = true;
    for n in n_min..=n_max {
        let omegas = optimal_clique(n)?;
        let bound = ng_bound(n);
        let p_cs = cs_ng_sum(n, omegas[0]);
        let gap = omegas.iter().map(|&w| bound - cs_ng_sum(n, w)).fold(0.0f64, |a, g| if g.abs() > a.abs() { g } else { a });
        agrees &= gap.abs() <= AGREEMENT;
        let omega_text = omegas.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";");
        rows.push(vec![
            n.to_string(),
            (n % 3).to_string(),
            fmt_num(bound),
            omega_text,
            fmt_num(p_cs),
            fmt_num(gap),
        ]);
        json_rows.push(json!({
            "n": n,
            "residue": n % 3,
            "bound": bound,
            "omega_star": omegas,
            "p_cs": p_cs,
            "gap": gap,
        }));
    }
    let table = Table {
        columns: &["n", "residue", "bound", "omega_star", "p_cs", "gap"],
        rows,
    };
    Ok((json!({ "rows": json_rows, "all_gaps_zero": agrees }), table, agrees))
}

/// `CS(n, ω)`, its complement and `K_{n−1}⁺` are threshold graphs, so a
/// graph is isomorphic to one of them iff the degree sequences agree.
fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn search(mode: Mode, n: usize, starts: usize, max_steps: usize, seed: u64) -> Result<Rendered, Error> {
    let targets: Vec<Vec<usize>> = match mode {
        Mode::Ng => optimal_clique(n)?
            .into_iter()
            .flat_map(|w| {
                let cs = complete_split(n, w).expect("valid split graph");
                [sorted_degrees(&cs), sorted_degrees(&cs.complement())]
            })
            .collect(),
        Mode::Qspread => vec![sorted_degrees(&pendant_clique(n)?)],
    };
    let bound = ng_bound(n);
    let mut traces = Vec::with_capacity(starts);
    for i in 0..starts {
        let s = seed.wrapping_add(i as u64);
        let start = match mode {
            Mode::Ng => random_graph(n, 0.5, s)?,
            Mode::Qspread => random_connected_graph(n, s)?,
        };
        traces.push(local_search(&start, mode.into(), max_steps, s)?);
    }

    let mut rows = Vec::new();
    let mut runs = Vec::new();
    let mut hits = 0;
    let mut violations = 0;
    for (i, t) in traces.iter().enumerate() {
        let extremal = targets.contains(&sorted_degrees(&t.fixpoint));
        hits += extremal as usize;
        if mode == Mode::Ng && t.final_value > bound + AGREEMENT {
            violations += 1;
        }
        rows.push(vec![
            i.to_string(),
            t.seed.to_string(),
            fmt_num(t.start_value),
            fmt_num(t.final_value),
            t.steps.len().to_string(),
            t.complete.to_string(),
            extremal.to_string(),
            t.fixpoint.to_graph6(),
        ]);
        runs.push(json!({
            "seed": t.seed,
            "start": t.start.to_graph6(),
            "start_value": t.start_value,
            "fixpoint": t.fixpoint.to_graph6(),
            "final_value": t.final_value,
            "complete": t.complete,
            "stalled": t.stalled,
            "extremal": extremal,
            "steps": t.steps,
        }));
    }
    let best = traces.iter().map(|t| t.final_value).fold(f64::NEG_INFINITY, f64::max);
    let body = json!({
        "mode": Objective::from(mode),
        "n": n,
        "starts": starts,
        "max_steps": max_steps,
        "best_value": best,
        "bound": if mode == Mode::Ng { Some(bound) } else { None },
        "extremal_fraction": hits as f64 / starts as f64,
        "bound_violations": violations,
        "runs": runs,
    });
    let table = Table {
        columns: &["start", "seed", "start_value", "final_value", "steps", "complete", "extremal", "fixpoint"],
        rows,
    };
    Ok((body, table, violations == 0))
}

fn limit_eigen() -> Result<Rendered, Error> {
    let w = StepGraphon::split_limit();
    let e = max_eigen(&w)?;
    let c = max_eigen(&w.complement())?;
    let s2 = 2f64.sqrt();
    let checks = [
        ("mu", e.mu, 2.0 / 3.0),
        ("mu_complement", c.mu, 2.0 / 3.0),
        ("f_clique", e.f[0], s2),
        ("f_independent", e.f[1], s2 / 2.0),
        ("g_clique", c.f[0], 0.0),
        ("g_independent", c.f[1], 6f64.sqrt() / 2.0),
        ("mu_sum", e.mu + c.mu, 4.0 / 3.0),
    ];
    let agrees = checks.iter().all(|(_, got, want)| (got - want).abs() <= LIMIT_TOLERANCE);
    let rows = checks
        .iter()
        .map(|(name, got, want)| vec![name.to_string(), fmt_num(*got), fmt_num(*want), fmt_num(got - want)])
        .collect();
    let body = json!({
        "graphon": w,
        "eigen": e,
        "complement_eigen": c,
        "checks": checks.iter().map(|(name, got, want)| json!({"quantity": name, "value": got, "expected": want})).collect::<Vec<_>>(),
        "matches": agrees,
    });
    let table = Table {
        columns: &["quantity", "value", "expected", "error"],
        rows,
    };
    Ok((body, table, agrees))
}

fn relation(n: usize, samples: usize, seed: u64) -> Result<Rendered, Error> {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut agrees = true;
    for i in 0..samples {
        let s = seed.wrapping_add(i as u64);
        let g = random_graph(n, 0.5, s)?;
        let lambda1 = eigh(&adjacency_matrix(&g))?.values[0];
        let mu = max_eigen(&StepGraphon::from_graph(&g))?.mu;
        let n_mu = n as f64 * mu;
        let gap = (lambda1 - n_mu).abs();
        agrees &= gap <= AGREEMENT;
        rows.push(vec![n.to_string(), fmt_num(mu), fmt_num(n_mu), fmt_num(lambda1), fmt_num(gap)]);
        json_rows.push(json!({"seed": s, "graph6": g.to_graph6(), "mu": mu, "n_mu": n_mu, "lambda1": lambda1, "gap": gap}));
    }
    let table = Table {
        columns: &["n", "mu", "n_mu", "lambda1", "gap"],
        rows,
    };
    Ok((json!({ "n": n, "samples": json_rows, "all_agree": agrees }), table, agrees))
}

fn cutnorm(left: &Input, right: &Input) -> Rendered {
    let diff = common_refinement_diff(left.graphon.kernel(), right.graphon.kernel());
    let norm = cut_norm(&diff);
    let delta = delta_cut_upper(&left.graphon, &right.graphon);
    let table = Table {
        columns: &["cut_norm", "exact", "delta_upper", "measures_matched", "permutations_exhausted"],
        rows: vec![vec![
            fmt_num(norm.value),
            norm.exact.to_string(),
            fmt_num(delta.value),
            delta.measures_matched.to_string(),
            delta.permutations_exhausted.to_string(),
        ]],
    };
    let body = json!({
        "left": left.source,
        "right": right.source,
        "blocks": diff.k(),
        "cut_norm": norm,
        "delta_cut": delta,
    });
    (body, table, true)
}

fn diag(source: &str, g: &Graph, epsilon: f64) -> Result<Rendered, Error> {
    let d = asymptotic_diagnostics(g, epsilon)?;
    let opt = |b: Option<bool>| b.map_or_else(String::new, |b| b.to_string());
    let fields = vec![
        ("n", d.n.to_string()),
        ("edges", d.edges.to_string()),
        ("q1", fmt_num(d.q1)),
        ("qn", fmt_num(d.qn)),
        ("epsilon", fmt_num(epsilon)),
        ("s_size", d.partition.s.len().to_string()),
        ("t_size", d.partition.t.len().to_string()),
        ("l_size", d.partition.l.len().to_string()),
        ("x_max_scaled", fmt_num(d.partition.x_max_scaled)),
        ("z_max_scaled", fmt_num(d.partition.z_max_scaled)),
        ("q1_above_2n_minus_5", d.flags.q1_above_2n_minus_5.to_string()),
        ("qn_below_3", d.flags.qn_below_3.to_string()),
        ("edges_above_bound", d.flags.edges_above_bound.to_string()),
        ("x_below_bound", opt(d.flags.x_below_bound)),
        ("t_below_8", opt(d.flags.t_below_8)),
        ("perron_max_scaled", fmt_num(d.perron_max_scaled)),
        ("deviation_scaled", d.deviation_scaled.map_or_else(String::new, fmt_num)),
    ];
    let table = Table {
        columns: &["field", "value"],
        rows: fields.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
    };
    let body = json!({ "graph": source, "graph6": g.to_graph6(), "diagnostics": d });
    Ok((body, table, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_examples() {
        let inv = parse_invocation(["verify-ng", "--n", "5"]).unwrap();
        assert!(matches!(inv.command, Command::VerifyNg { n: 5, .. }));
        assert_eq!((inv.output, inv.seed), (OutputFormat::Json, 0));

        let inv = parse_invocation(["bound-table", "--n-min", "3", "--n-max", "40", "--output", "csv"]).unwrap();
        assert!(matches!(inv.command, Command::BoundTable { n_min: 3, n_max: 40 }));
        assert_eq!(inv.output, OutputFormat::Csv);
    }

    #[test]
    fn rejects_bad_flags() {
        let err = parse_invocation(["verify-ng", "--n", "99"]).unwrap_err();
        assert!(err.to_string().contains("--n"));
        assert!(parse_invocation(["verify-ng", "--n", "8"]).is_err());
        assert!(parse_invocation(["verify-ng", "--n", "8", "--allow-n8"]).is_ok());
        assert!(parse_invocation(["verify-ng", "--n", "5", "--bogus"]).is_err());
        assert!(parse_invocation(["bound-table", "--n-min", "9", "--n-max", "3"]).is_err());
        assert!(parse_invocation(["search-local", "--mode", "ng", "--n", "10", "--starts", "0"]).is_err());
        assert!(parse_invocation(["search-local", "--mode", "spread", "--n", "10"]).is_err());
        assert!(parse_invocation(["diag", "--graph", "/nonexistent/graph.g6"]).is_err());
        assert!(parse_invocation(["verify-ng", "--n", "5", "--jobs", "0"]).is_err());
    }

    #[test]
    fn seed_is_global() {
        let inv = parse_invocation(["search-local", "--mode", "ng", "--n", "6", "--seed", "42"]).unwrap();
        assert_eq!(inv.seed, 42);
        let inv = parse_invocation(["--seed", "7", "graphon-check", "theorem34"]).unwrap();
        assert_eq!(inv.seed, 7);
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(5.0), "5");
        assert_eq!(fmt_num(3.0f64.sqrt() + 2.0), "3.73205081");
        assert_eq!(fmt_num(57f64.sqrt()), "7.54983444");
        assert_eq!(fmt_num(1e-12), "0");
        assert_eq!(fmt_num(-3e-10), "0");
        assert_eq!(fmt_num(123456.789), "123456.789");
        assert_eq!(fmt_num(0.000123456789123), "0.000123456789");
    }

    #[test]
    fn bound_table_rows_have_zero_gap() {
        let inv = parse_invocation(["bound-table", "--n-min", "3", "--n-max", "9", "--output", "csv"]).unwrap();
        let out = execute(&inv).unwrap();
        assert_eq!(out.code, 0);
        let lines: Vec<&str> = out.report.lines().collect();
        assert_eq!(lines[0], "# bound-table seed=0");
        assert_eq!(lines[1], "n,residue,bound,omega_star,p_cs,gap");
        assert_eq!(lines.len(), 2 + 7);
        assert!(lines[2..].iter().all(|l| l.ends_with(",0")));
    }
}
