//! Command-line front end for the DR cycle engine.
//!
//! Exit codes: 0 success, 1 semantic failure (invalid data, a crosscheck
//! that finds differing terms), 2 parse or I/O error, 3 internal invariant
//! (routes disagree inside `dr`, held-out primes not predicted, panics).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num::One;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use stackydr::decorations::half_edge_ages;
use stackydr::graph::enumerate_stable_graphs_up_to;
use stackydr::pipeline::Interpolated;
use stackydr::taut::Coefficient;
use stackydr::{
    crosscheck_constant_terms, dr_cycle, enumerate_chi, enumerate_stable_graphs, CrosscheckReport, EdgeSign, Error,
    EvalConfig, JobSpec, PipelineError, Problem, TautClass, WeightMode, WeightingSpace,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "stackydr", version, about = "Double ramification cycles for maps to BG")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the five conditions on the ramification data of a job file.
    Validate { job: PathBuf },
    /// Compute the DR cycle and print it as JSON.
    Dr {
        job: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the stable graphs of type (g, n) with |Aut| and h¹.
    Graphs { g: u32, n: usize },
    /// Compare the constant terms of the two graph sums in degree d.
    Crosscheck {
        job: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Adds 1 to the coefficient of the given Chern-route term.
        #[arg(long, hide = true)]
        corrupt_term: Option<usize>,
    },
    /// Dump the weightings mod r of every labeled stratum (debug).
    Weightings {
        job: PathBuf,
        /// Prime root order.
        #[arg(long, short)]
        r: u64,
        /// Largest number of edges.
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// extended | fractional
    #[arg(long)]
    mode: Option<WeightMode>,
    /// Cycle degree; defaults to the genus.
    #[arg(long)]
    degree: Option<usize>,
    /// Comma-separated sample primes; the last two are held out.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// jppz | verbatim
    #[arg(long)]
    edge_sign: Option<EdgeSign>,
}

/// Result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { Outcome::ok(text) } else { Outcome::fail(code, text) };
        }
    };
    let result = std::panic::catch_unwind(|| match cli.command {
        Command::Validate { job } => cmd_validate(&job),
        Command::Dr { job, run } => cmd_dr(&job, &run),
        Command::Graphs { g, n } => cmd_graphs(g, n),
        Command::Crosscheck { job, run, corrupt_term } => cmd_crosscheck(&job, &run, corrupt_term),
        Command::Weightings { job, r, degree } => cmd_weightings(&job, r, degree),
    });
    result.unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Outcome::fail(EXIT_INTERNAL, format!("internal error: {msg}\n"))
    })
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Group(_) | Error::Rep(_) | Error::RamData(_) | Error::Graph(_) => EXIT_SEMANTIC,
        Error::Pipeline(PipelineError::BadPrimes(_)) => EXIT_PARSE,
        Error::Pipeline(PipelineError::DegreeTooLarge { .. }) => EXIT_SEMANTIC,
        Error::Pipeline(PipelineError::RouteDisagreement { .. } | PipelineError::InsufficientR { .. }) => EXIT_INTERNAL,
        Error::Decoration(_) | Error::Series(_) => EXIT_INTERNAL,
    }
}

fn fail(err: Error) -> Outcome {
    Outcome::fail(exit_code(&err), format!("error: {err}\n"))
}

fn load(path: &Path) -> Result<JobSpec, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("error: cannot read {}: {e}\n", path.display())))?;
    JobSpec::parse(&text).map_err(|e| {
        Outcome::fail(
            EXIT_PARSE,
            format!("error: {}:{}:{}: {}\n", path.display(), e.line, e.column, e),
        )
    })
}

fn emit(value: &Value, output: Option<&Path>) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match output {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::fail(EXIT_PARSE, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome::ok(text),
    }
}

const CONDITIONS: [&str; 5] = [
    "f equals the order of the class",
    "sums of c/f over mu0 and muInf agree",
    "ages match <c/f>",
    "insertions have age 0",
    "monodromy condition",
];

fn cmd_validate(path: &Path) -> Outcome {
    let job = match load(path) {
        Ok(j) => j,
        Err(o) => return o,
    };
    let group = match job.group() {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let rep = match job.rep(&group) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let report = job.ram.check(&group, &rep);
    let mut out = String::new();
    if let Some(e) = &report.structural {
        out.push_str(&format!("structure FAIL: {e}\n"));
    }
    for (i, (cond, name)) in report.conditions.iter().zip(CONDITIONS).enumerate() {
        match cond {
            _ if report.structural.is_some() => out.push_str(&format!("condition ({}) SKIP: {name}\n", i + 1)),
            None => out.push_str(&format!("condition ({}) PASS: {name}\n", i + 1)),
            Some(e) => {
                let msg = e.to_string();
                let msg = msg.strip_prefix(&format!("condition ({}): ", i + 1)).unwrap_or(&msg).to_string();
                out.push_str(&format!("condition ({}) FAIL: {msg}\n", i + 1))
            }
        }
    }
    Outcome { code: if report.is_valid() { EXIT_OK } else { EXIT_SEMANTIC }, stdout: out, stderr: String::new() }
}

struct Setup {
    problem: Problem,
    cfg: EvalConfig,
    degree: usize,
    jobs: Option<usize>,
    output: Option<PathBuf>,
}

fn setup(path: &Path, args: &RunArgs) -> Result<Setup, Outcome> {
    let job = load(path)?;
    let problem = job.problem().map_err(fail)?;
    let cfg = EvalConfig {
        mode: args.mode.unwrap_or_else(|| job.mode()),
        edge_sign: args.edge_sign.or(job.options.edge_sign).unwrap_or_default(),
        primes: args.primes.clone().or_else(|| job.options.primes.clone()),
    };
    Ok(Setup {
        degree: args.degree.or(job.options.degree).unwrap_or(problem.genus() as usize),
        jobs: args.jobs.or(job.options.jobs),
        output: args.output.clone().or_else(|| job.options.output.clone()),
        problem,
        cfg,
    })
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool.
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Outcome> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Outcome::fail(EXIT_PARSE, "error: --jobs must be positive\n")),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Outcome::fail(EXIT_INTERNAL, format!("error: thread pool: {e}\n"))),
    }
}

fn checksum<C: Coefficient>(class: &TautClass<C>) -> String {
    let text = serde_json::to_string(&class.to_json()).expect("JSON values serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn route_metadata(i: &Interpolated) -> Value {
    json!({
        "samplePrimes": i.plan.samples(),
        "heldOutPrimes": i.plan.validators(),
        "degreeBound": i.plan.degree_bound,
        "interpolationDegree": i.max_degree,
        "sha256": checksum(&i.class),
    })
}

fn diff_outcome(report: &CrosscheckReport) -> Outcome {
    Outcome::fail(
        EXIT_SEMANTIC,
        format!(
            "degree {}: routes disagree on {} term(s)\n{}\n",
            report.degree,
            report.differing.len(),
            report.report()
        ),
    )
}

/// `a^{1-l(μ∞)} const(ĉ_d)`, checked against the Pixton route; for `d = g`
/// this is the DR cycle.
fn cmd_dr(path: &Path, args: &RunArgs) -> Outcome {
    let s = match setup(path, args) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let g = s.problem.genus() as usize;
    let computed = with_jobs(s.jobs, || -> Result<(TautClass<_>, Interpolated, Interpolated), Error> {
        if s.degree == g {
            let out = dr_cycle(&s.problem, &s.cfg)?;
            Ok((out.class, out.chern, out.pixton))
        } else {
            let report = crosscheck_constant_terms(&s.problem, s.degree, &s.cfg)?;
            if !report.agree() {
                return Err(PipelineError::RouteDisagreement {
                    differing: report.differing.len(),
                    report: report.report(),
                    chern: Box::new(report.chern),
                    pixton: Box::new(report.pixton),
                }
                .into());
            }
            let class = report.chern.scale(&s.problem.dr_prefactor());
            Ok((class, report.chern_interpolation.unwrap(), report.pixton_interpolation.unwrap()))
        }
    });
    let (class, chern, pixton) = match computed {
        Ok(Ok(v)) => v,
        Ok(Err(e)) => return fail(e),
        Err(o) => return o,
    };
    let value = json!({
        "genus": g,
        "degree": s.degree,
        "markings": s.problem.num_markings(),
        "mode": s.cfg.mode.to_string(),
        "prefactor": s.problem.dr_prefactor().to_string(),
        "terms": class.to_json(),
        "routes": {
            "chern": route_metadata(&chern),
            "pixton": route_metadata(&pixton),
        },
    });
    emit(&value, s.output.as_deref())
}

fn cmd_graphs(g: u32, n: usize) -> Outcome {
    let graphs = match enumerate_stable_graphs(g, n) {
        Ok(v) => v,
        Err(e) => return fail(e.into()),
    };
    let list: Vec<Value> = graphs
        .iter()
        .map(|gr| {
            json!({
                "graph": gr.to_json(),
                "aut": gr.automorphism_count(),
                "h1": gr.first_betti(),
            })
        })
        .collect();
    emit(&Value::Array(list), None)
}

fn cmd_crosscheck(path: &Path, args: &RunArgs, corrupt: Option<usize>) -> Outcome {
    let s = match setup(path, args) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let report = match with_jobs(s.jobs, || crosscheck_constant_terms(&s.problem, s.degree, &s.cfg)) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => return fail(e),
        Err(o) => return o,
    };
    let report = match corrupt {
        None => report,
        Some(i) => {
            let mut chern = report.chern.clone();
            match chern.terms().keys().nth(i).cloned() {
                Some(key) => chern.add_term(key, stackydr::Rational::one()),
                None => return Outcome::fail(EXIT_PARSE, format!("error: no term {i} to corrupt\n")),
            }
            CrosscheckReport::from_classes(report.degree, chern, report.pixton)
        }
    };
    if !report.agree() {
        return diff_outcome(&report);
    }
    Outcome::ok(format!(
        "degree {}: routes agree on {} term(s) over {} strata\n",
        report.degree,
        report.chern.len(),
        report.chern.num_strata()
    ))
}

fn cmd_weightings(path: &Path, r: u64, degree: Option<usize>) -> Outcome {
    if !stackydr::arith::is_prime(r) {
        return Outcome::fail(EXIT_PARSE, format!("error: -r {r} is not prime\n"));
    }
    let job = match load(path) {
        Ok(j) => j,
        Err(o) => return o,
    };
    let problem = match job.problem() {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let collect = || -> Result<Vec<Value>, Error> {
        let ram = &problem.ram;
        let legs = ram.effective_weights(&problem.group, job.mode())?;
        let leg_classes = ram.leg_classes(&problem.group)?;
        let max_edges = degree.unwrap_or(ram.genus as usize);
        let mut out = Vec::new();
        for graph in enumerate_stable_graphs_up_to(ram.genus, legs.len(), max_edges)? {
            for chi in enumerate_chi(&graph, &problem.group, &leg_classes)? {
                let ages = half_edge_ages(&problem.group, &problem.rep, &chi)?;
                let space = WeightingSpace::new(&graph, &ages, &legs, r)?;
                let weights: Vec<Vec<u64>> = space.iter_edge_weights().collect();
                out.push(json!({
                    "graph": graph.to_json(),
                    "chi": chi.classes().iter().map(|c| c.0).collect::<Vec<_>>(),
                    "ages": ages.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    "h1": graph.first_betti(),
                    "count": space.count(),
                    "edgeWeights": weights,
                }));
            }
        }
        Ok(out)
    };
    match collect() {
        Ok(list) => emit(&json!({ "r": r, "strata": list }), None),
        Err(e) => fail(e),
    }
}
