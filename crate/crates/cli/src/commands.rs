use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seatplan::oracle::{PriceKind, PriceReport, DEFAULT_CAP};
use seatplan::reductions::{self, PofFamily, Reduction, SourceProblem};
use seatplan::{param, polysolve, Arrangement, Error, Instance, Oracle, Problem, Rational, SeatGraph, SolveReport};

use crate::document::{load_instance, DocumentError, InstanceDocument, Loaded, Metadata, NotesDoc};
use crate::report::{self, Report};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Overrides the enumeration cap (searches visit at most `cap!` candidates).
pub const CAP_ENV: &str = "SEATPLAN_ENUM_CAP";

#[derive(Debug, Parser)]
#[command(name = "seatplan", version, about = "Exact solvers for seat arrangement problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve MWA, MUA, STA or EFA on a document.
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        input: PathBuf,
    },
    /// Evaluate the document's arrangement.
    Check { input: PathBuf },
    /// Find a stable arrangement within k swaps of metadata.start_arrangement.
    Localsearch {
        /// Defaults to metadata.k.
        #[arg(long)]
        k: Option<usize>,
        input: PathBuf,
    },
    /// Price of fairness or of stability, with witnesses.
    Metrics {
        #[arg(long, value_enum)]
        kind: KindArg,
        input: PathBuf,
    },
    /// Write a hardness gadget or a price-of-fairness family as a document.
    Gen(Box<GenArgs>),
    /// Run the embedded corpus.
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProblemArg {
    Mwa,
    Mua,
    Sta,
    Efa,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Mwa => Problem::Mwa,
            ProblemArg::Mua => Problem::Mua,
            ProblemArg::Sta => Problem::Sta,
            ProblemArg::Efa => Problem::Efa,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Brute,
    Components2,
    Vc,
    EdgeEfa,
    SymEfa,
    StrictPosEfa,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Components2 => "components2",
            Method::Vc => "vc",
            Method::EdgeEfa => "edge-efa",
            Method::SymEfa => "sym-efa",
            Method::StrictPosEfa => "strict-pos-efa",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Pof,
    Pos,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    reduction: Option<Reduction>,
    /// `id` or `id:p1,p2`, e.g. `unbounded:5,1` or `binary:4`.
    #[arg(long)]
    family: Option<PofFamily>,
    /// Source graph (pattern for spanning reductions) as `n:u-v,u-v,...`.
    #[arg(long)]
    graph: Option<GraphArg>,
    /// Host graph for spanning reductions.
    #[arg(long)]
    host: Option<GraphArg>,
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated multiset.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<u64>>,
    #[arg(long)]
    bound: Option<u64>,
    /// Ranked lists with ties as JSON, `lists[p]` = tie groups best first.
    #[arg(long)]
    lists: Option<String>,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct GraphArg(SeatGraph);

impl std::str::FromStr for GraphArg {
    type Err = String;

    fn from_str(s: &str) -> Result<GraphArg, String> {
        parse_graph(s).map(GraphArg)
    }
}

/// Parses `n:u-v,u-v,...`; `n:` alone is edgeless.
pub fn parse_graph(s: &str) -> Result<SeatGraph, String> {
    let (n, rest) = s.split_once(':').ok_or_else(|| format!("expected `n:u-v,...`, got {s:?}"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad vertex count {n:?}"))?;
    let mut edges = Vec::new();
    for e in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (u, v) = e.split_once('-').ok_or_else(|| format!("bad edge {e:?}"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad edge {e:?}"));
        edges.push((parse(u)?, parse(v)?));
    }
    SeatGraph::new(n, edges).map_err(|e| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Solver(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

/// A finished command: the report text and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: String,
    pub code: i32,
}

impl Outcome {
    fn ok(report: &Report) -> Outcome {
        Outcome {
            report: report.render(),
            code: EXIT_OK,
        }
    }

    fn decided(report: &Report, feasible: bool) -> Outcome {
        Outcome {
            report: report.render(),
            code: if feasible { EXIT_OK } else { EXIT_INFEASIBLE },
        }
    }
}

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn std::io::Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = oracle_from_env().and_then(|oracle| execute(cli.command, &oracle));
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.report.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn oracle_from_env() -> Result<Oracle, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| (1..=30).contains(&c))
            .map(Oracle::new)
            .ok_or_else(|| Failure::Usage(format!("{CAP_ENV} must be an integer in 1..=30, got {v:?}"))),
        Err(_) => Ok(Oracle::new(DEFAULT_CAP)),
    }
}

fn execute(command: Command, oracle: &Oracle) -> Result<Outcome, Failure> {
    match command {
        Command::Solve { problem, method, input } => {
            let loaded = load_instance(&input)?;
            let (ran, solved) = solve(oracle, problem.into(), method, &loaded.instance)?;
            Ok(solve_outcome(&loaded, ran, &solved)?)
        }
        Command::Check { input } => check(&load_instance(&input)?),
        Command::Localsearch { k, input } => localsearch(oracle, &load_instance(&input)?, k),
        Command::Metrics { kind, input } => metrics(oracle, &load_instance(&input)?, kind),
        Command::Gen(args) => gen(*args),
        Command::Selftest => selftest::run(oracle),
    }
}

fn wrong_problem(method: Method, problem: Problem) -> Failure {
    Failure::Usage(format!("method {} does not solve {}", method.name(), problem.name()))
}

/// Solves with the requested method; `auto` resolves to the first applicable
/// one and the resolved method is returned.
pub fn solve(oracle: &Oracle, problem: Problem, method: Method, instance: &Instance) -> Result<(Method, SolveReport), Failure> {
    let report = match (method, problem) {
        (Method::Auto, _) => return solve_auto(oracle, problem, instance),
        (Method::Brute, _) => oracle.brute_solve(problem, instance)?,
        (Method::Components2, Problem::Mwa) => polysolve::mwa_small_components(instance)?,
        (Method::Components2, Problem::Mua) => polysolve::mua_small_components(instance)?,
        (Method::Vc, Problem::Mwa) => param::mwa_vertex_cover_with_budget(instance, oracle.budget())?,
        (Method::Vc, Problem::Sta) => param::sta_symmetric_with_budget(instance, oracle.budget())?,
        (Method::EdgeEfa, Problem::Efa) => polysolve::efa_edge_graph(instance)?,
        (Method::SymEfa, Problem::Efa) => polysolve::efa_symmetric_small_components(instance)?,
        (Method::StrictPosEfa, Problem::Efa) => polysolve::efa_strict_or_positive(instance)?,
        _ => return Err(wrong_problem(method, problem)),
    };
    Ok((method, report))
}

fn solve_auto(oracle: &Oracle, problem: Problem, instance: &Instance) -> Result<(Method, SolveReport), Failure> {
    let graph = instance.graph();
    let small = graph.max_component_order() <= 2;
    let edges_only = small && (0..graph.vertex_count()).all(|v| graph.degree(v) == 1);
    let flags = instance.profile().classify();
    let method = match problem {
        Problem::Mwa | Problem::Mua if small => Some(Method::Components2),
        Problem::Efa if edges_only => Some(Method::EdgeEfa),
        Problem::Efa if small && flags.symmetric => Some(Method::SymEfa),
        Problem::Efa if small && (flags.strict || flags.positive) => Some(Method::StrictPosEfa),
        Problem::Mwa => Some(Method::Vc),
        Problem::Sta if flags.symmetric => Some(Method::Vc),
        _ => None,
    };
    if let Some(m) = method {
        match solve(oracle, problem, m, instance) {
            Err(Failure::Solver(Error::BudgetExceeded { .. })) if m == Method::Vc => {}
            other => return other,
        }
    }
    solve(oracle, problem, Method::Brute, instance)
}

fn solve_outcome(loaded: &Loaded, method: Method, solved: &SolveReport) -> Result<Outcome, Failure> {
    let mut r = Report::new();
    r.set("problem", solved.problem.name())
        .set("method", method.name())
        .set("feasible", solved.feasible);
    if let Some(a) = &solved.arrangement {
        report::describe(&mut r, &loaded.instance, a)?;
    }
    if let Some(obj) = solved.objective {
        r.set("objective", report::rational(obj));
    }
    if let (Some(t), Some(obj)) = (&loaded.metadata.target, solved.objective) {
        let t: Rational = t.parse().expect("validated on load");
        r.set("target", report::rational(t)).set("meets_target", obj >= t);
    }
    Ok(Outcome::decided(&r, solved.feasible))
}

fn check(loaded: &Loaded) -> Result<Outcome, Failure> {
    let a = loaded
        .arrangement
        .as_ref()
        .ok_or_else(|| Failure::Usage("check needs a document with an arrangement".into()))?;
    let inst = &loaded.instance;
    let mut r = Report::new();
    report::describe(&mut r, inst, a)?;
    let blocking = inst.blocking_pairs(a)?;
    let envy = inst.envy_pairs(a)?;
    r.set("utilities", report::rationals(&inst.utilities(a)?))
        .set("stable", blocking.is_empty())
        .set("envy_free", envy.is_empty())
        .set("blocking_pairs", report::pairs(&blocking))
        .set("envy_pairs", report::pairs(&envy));
    Ok(Outcome::ok(&r))
}

fn localsearch(oracle: &Oracle, loaded: &Loaded, k: Option<usize>) -> Result<Outcome, Failure> {
    let start = loaded
        .start_arrangement
        .as_ref()
        .ok_or_else(|| Failure::Usage("localsearch needs metadata.start_arrangement".into()))?;
    let k = k
        .or(loaded.metadata.k)
        .ok_or_else(|| Failure::Usage("localsearch needs --k or metadata.k".into()))?;
    let plan = param::local_k_sta_with_budget(&loaded.instance, start, k, oracle.budget())?;
    let mut r = Report::new();
    r.set("k", k).set("feasible", plan.is_some());
    if let Some(plan) = &plan {
        report::describe(&mut r, &loaded.instance, &plan.target)?;
        r.set("distance", plan.distance()).set("transpositions", report::pairs(&plan.transpositions));
    }
    Ok(Outcome::decided(&r, plan.is_some()))
}

fn metrics(oracle: &Oracle, loaded: &Loaded, kind: KindArg) -> Result<Outcome, Failure> {
    let price: PriceReport = match kind {
        KindArg::Pof => oracle.price_of_fairness(&loaded.instance)?,
        KindArg::Pos => oracle.price_of_stability(&loaded.instance)?,
    };
    let key = match price.kind {
        PriceKind::Pof => "pof",
        PriceKind::Pos => "pos",
    };
    let mut r = Report::new();
    r.set("kind", key)
        .set(key, price.value.to_string())
        .set("optimal_welfare", report::rational(price.optimal_welfare))
        .set("witness_optimal", report::arrangement(&price.witness_optimal));
    if let (Some(w), Some(a)) = (price.constrained_welfare, &price.witness_constrained) {
        r.set("constrained_welfare", report::rational(w))
            .set("witness_constrained", report::arrangement(a));
    }
    Ok(Outcome::ok(&r))
}

fn gen(args: GenArgs) -> Result<Outcome, Failure> {
    let doc = match (args.reduction, args.family) {
        (Some(reduction), _) => gen_reduction(reduction, &args)?,
        (None, Some(family)) => gen_family(family)?,
        (None, None) => return Err(Failure::Usage("gen needs --reduction or --family".into())),
    };
    doc.load()?;
    let text = doc.to_json();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| Failure::Write {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Outcome {
                report: String::new(),
                code: EXIT_OK,
            })
        }
        None => Ok(Outcome { report: text, code: EXIT_OK }),
    }
}

fn need<T: Clone>(value: &Option<T>, flag: &str, reduction: Reduction) -> Result<T, Failure> {
    value
        .clone()
        .ok_or_else(|| Failure::Usage(format!("reduction {reduction} needs --{flag}")))
}

fn source_from_args(reduction: Reduction, args: &GenArgs) -> Result<SourceProblem, Failure> {
    use reductions::SourceKind::*;
    let graph = || need(&args.graph, "graph", reduction).map(|g| g.0);
    Ok(match reduction.source_kind() {
        KClique => SourceProblem::KClique {
            graph: graph()?,
            k: need(&args.k, "k", reduction)?,
        },
        IndependentSet => SourceProblem::IndependentSet {
            graph: graph()?,
            k: need(&args.k, "k", reduction)?,
        },
        Partition => SourceProblem::Partition {
            values: need(&args.values, "values", reduction)?,
        },
        ThreePartition => SourceProblem::ThreePartition {
            values: need(&args.values, "values", reduction)?,
            bound: need(&args.bound, "bound", reduction)?,
        },
        PartitionIntoTriangles => SourceProblem::PartitionIntoTriangles { graph: graph()? },
        SpanningSubgraphIso => SourceProblem::SpanningSubgraphIso {
            pattern: graph()?,
            host: need(&args.host, "host", reduction)?.0,
        },
        ExchangeRoommates => {
            let text = need(&args.lists, "lists", reduction)?;
            let lists = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--lists: {e}")))?;
            SourceProblem::ExchangeRoommates { lists }
        }
    })
}

fn gen_reduction(reduction: Reduction, args: &GenArgs) -> Result<InstanceDocument, Failure> {
    reduction_document(reduction, &source_from_args(reduction, args)?)
}

/// The gadget document with target, problem, start arrangement and roles.
pub fn reduction_document(reduction: Reduction, source: &SourceProblem) -> Result<InstanceDocument, Failure> {
    let hard = reductions::generate(reduction, source)?;
    let metadata = Metadata {
        name: Some(reduction.id().to_string()),
        target: hard.target.map(|t| t.to_string()),
        problem: Some(hard.problem.name().to_string()),
        k: hard.k,
        start_arrangement: hard.start_arrangement.as_ref().map(|a| a.seats().to_vec()),
        notes: Some(NotesDoc::from(&hard.gadget_notes)),
    };
    Ok(InstanceDocument::from_instance(&hard.instance, None, Some(metadata)))
}

/// Family documents carry the welfare-optimal arrangement of the construction
/// and its welfare as the target. The P3 family carries the identity instead.
fn gen_family(family: PofFamily) -> Result<InstanceDocument, Failure> {
    let instance = reductions::pof_family(family)?;
    let optimal = match family {
        PofFamily::Unbounded { .. } => polysolve::mwa_small_components(&instance)?.arrangement,
        PofFamily::NoEnvyP3 => None,
        _ => reductions::pof_proof_arrangements(family)?.map(|(opt, _)| opt),
    };
    let target = optimal.as_ref().map(|a| instance.social_welfare(a)).transpose()?;
    let arrangement = optimal.unwrap_or_else(|| Arrangement::identity(instance.agent_count()));
    let name = match family {
        PofFamily::Unbounded { x, y } => format!("unbounded:{x},{y}"),
        PofFamily::Binary { n } => format!("binary:{n}"),
        PofFamily::SymmetricTriangles { n } => format!("symmetric_triangles:{n}"),
        PofFamily::NoEnvyP3 => "no_envy_p3".to_string(),
    };
    let metadata = Metadata {
        name: Some(name),
        target: target.map(|t| t.to_string()),
        problem: Some(if target.is_some() { "mwa" } else { "efa" }.to_string()),
        ..Metadata::default()
    };
    Ok(InstanceDocument::from_instance(&instance, Some(&arrangement), Some(metadata)))
}
