//! seqprove command line: prove a problem, translate it to SMT-LIB,
//! benchmark solver/strategy grids, and render result charts.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use seqprove::bench::{
    find_disagreements, read_records_csv, run_benchmark, scatter_series, survival_series,
    write_matrix_csv, write_records_csv, BenchOptions,
};
use seqprove::induction::{
    build_refutation, emit_options, prepare_query, prove, InductionConfig, ProofOutcome,
    TimeoutPolicy,
};
use seqprove::plot::{write_scatter_svg, write_survival_svg};
use seqprove::preprocess::Strategy;
use seqprove::problem::ProblemSpec;
use seqprove::smtlib::{detect_solvers, emit_script, SolverConfig};
use seqprove::builtin;

/// Environment variable naming the default solver configuration file.
const SOLVERS_ENV: &str = "SEQPROVE_SOLVERS";

const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_SPAWN_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "seqprove",
    version,
    about = "Induction prover for sequence inequalities over QF_NRA"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove a problem by iterated induction depth
    Prove(ProveArgs),
    /// Write the SMT-LIB refutation script for a problem
    Translate(TranslateArgs),
    /// Run a problem directory against solvers and strategies
    Bench(BenchArgs),
    /// Render survival or scatter charts from a results CSV
    Plot(PlotArgs),
    /// Write the bundled example problems (and their script dataset)
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct ProveArgs {
    /// Problem file (JSON)
    problem: PathBuf,

    /// Solver name to use (from the config file or the auto-detected set)
    #[arg(long)]
    solver: Option<String>,

    /// Solver configuration file (JSON list); defaults to $SEQPROVE_SOLVERS
    /// or the auto-detected solvers
    #[arg(long)]
    solvers: Option<PathBuf>,

    /// Largest induction depth to try
    #[arg(long, default_value_t = 5)]
    max_r: u32,

    /// Per-query timeout in seconds
    #[arg(long, default_value_t = 1200)]
    timeout: u64,

    /// Override the problem's denominator strategy
    #[arg(long)]
    strategy: Option<Strategy>,

    /// Reduce powers of radical encoding variables to linear
    #[arg(long, default_value = "on")]
    reduce_radicals: OnOff,

    /// What to do when a refutation query times out or returns unknown
    #[arg(long, value_enum, default_value_t = OnTimeout::Abort)]
    on_timeout: OnTimeout,

    /// Print the generated scripts
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct TranslateArgs {
    /// Problem file (JSON)
    problem: PathBuf,

    /// Output path for the script
    #[arg(short, long)]
    output: PathBuf,

    /// Override the problem's denominator strategy
    #[arg(long)]
    strategy: Option<Strategy>,

    /// Refutation depth the script is generated at
    #[arg(long, default_value_t = 1)]
    r: u32,

    /// Reduce powers of radical encoding variables to linear
    #[arg(long, default_value = "on")]
    reduce_radicals: OnOff,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of problem JSON files
    #[arg(long)]
    problems: PathBuf,

    /// Solver configuration file (JSON list); defaults to $SEQPROVE_SOLVERS
    /// or the auto-detected solvers
    #[arg(long)]
    solvers: Option<PathBuf>,

    /// Comma-separated strategies to run
    #[arg(long, value_delimiter = ',', default_values_t = [Strategy::Guard, Strategy::Bdc, Strategy::Ddc])]
    strategies: Vec<Strategy>,

    /// Per-query timeout in seconds
    #[arg(long, default_value_t = 1200)]
    timeout: u64,

    /// Concurrent solver processes (above 1 distorts times)
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Refutation depth of the generated scripts
    #[arg(long, default_value_t = 1)]
    r: u32,

    /// Reduce powers of radical encoding variables to linear
    #[arg(long, default_value = "on")]
    reduce_radicals: OnOff,

    /// Output directory for results.csv and matrix.csv
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct PlotArgs {
    /// results.csv produced by `bench`
    records: PathBuf,

    /// Chart kind
    #[arg(long, value_enum)]
    kind: PlotKind,

    /// First solver (scatter x-axis)
    #[arg(long)]
    a: Option<String>,

    /// Second solver (scatter y-axis)
    #[arg(long)]
    b: Option<String>,

    /// Output SVG path (defaults to <kind>.svg)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Directory the problems (and dataset) are written to
    #[arg(long, default_value = "examples-out")]
    out: PathBuf,

    /// Also translate every problem to .smt2 scripts
    #[arg(long, default_value = "on")]
    emit_smt2: OnOff,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    Survival,
    Scatter,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OnTimeout {
    Abort,
    Continue,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

impl OnOff {
    fn is_on(self) -> bool {
        self == OnOff::On
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Prove(args) => cmd_prove(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Examples(args) => cmd_examples(args),
    }
}

/// Solver list from an explicit file, the environment, or detection.
fn load_solvers(path: &Option<PathBuf>) -> Result<Vec<SolverConfig>> {
    if let Some(path) = path {
        return Ok(SolverConfig::load_list(path)?);
    }
    if let Ok(env_path) = std::env::var(SOLVERS_ENV) {
        return Ok(SolverConfig::load_list(Path::new(&env_path))?);
    }
    let detected = detect_solvers();
    if detected.is_empty() {
        bail!(
            "no solver available: install z3/cvc5/yices, run `npm install` \
             in tools/z3-wasm, or point --solvers at a config file"
        );
    }
    Ok(detected)
}

fn pick_solver(solvers: Vec<SolverConfig>, name: &Option<String>) -> Result<SolverConfig> {
    match name {
        None => Ok(solvers.into_iter().next().expect("nonempty solver list")),
        Some(name) => solvers
            .into_iter()
            .find(|s| &s.name == name)
            .ok_or_else(|| anyhow!("solver `{name}` not present in the configured set")),
    }
}

fn load_problem(path: &Path, strategy: Option<Strategy>) -> Result<ProblemSpec> {
    let mut p = ProblemSpec::load(path)?;
    if let Some(s) = strategy {
        p.strategy = s;
    }
    Ok(p)
}

fn cmd_prove(args: ProveArgs) -> Result<ExitCode> {
    let problem = load_problem(&args.problem, args.strategy)?;
    let solver = pick_solver(load_solvers(&args.solvers)?, &args.solver)?;
    println!(
        "proving {} with {} (strategy {}, max r {}, timeout {}s)",
        problem.name, solver.name, problem.strategy, args.max_r, args.timeout
    );
    let cfg = InductionConfig {
        max_r: args.max_r,
        solver,
        timeout: Duration::from_secs(args.timeout),
        on_timeout: match args.on_timeout {
            OnTimeout::Abort => TimeoutPolicy::Abort,
            OnTimeout::Continue => TimeoutPolicy::Continue,
        },
        reduce_radicals: args.reduce_radicals.is_on(),
    };
    if args.verbose {
        let q = prepare_query(
            &build_refutation(&problem, 1)?,
            problem.strategy,
            cfg.reduce_radicals,
        )?;
        let opts = emit_options(&problem, "refutation depth r=1", problem.strategy, false);
        print!("{}", emit_script(&q, &opts)?);
    }
    let report = prove(&problem, &cfg)?;
    for entry in &report.trace {
        println!(
            "  [{}] {} in {:.3}s",
            entry.kind,
            entry.result.status,
            entry.result.time_s()
        );
    }
    println!("{}", report.outcome);
    let spawn_failed = report
        .trace
        .iter()
        .any(|e| e.result.spawn_failed());
    match report.outcome {
        ProofOutcome::SolverError { .. } if spawn_failed => {
            Ok(ExitCode::from(EXIT_SPAWN_FAILURE))
        }
        ProofOutcome::SolverError { .. } => Ok(ExitCode::from(1)),
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn translate_to(problem: &ProblemSpec, r: u32, reduce: bool) -> Result<String> {
    let query = prepare_query(&build_refutation(problem, r)?, problem.strategy, reduce)?;
    let kind = format!("refutation depth r={r}");
    let opts = emit_options(problem, &kind, problem.strategy, false);
    Ok(emit_script(&query, &opts)?)
}

fn cmd_translate(args: TranslateArgs) -> Result<ExitCode> {
    let problem = load_problem(&args.problem, args.strategy)?;
    let script = translate_to(&problem, args.r, args.reduce_radicals.is_on())?;
    std::fs::write(&args.output, script)
        .with_context(|| format!("writing {}", args.output.display()))?;
    println!("wrote {}", args.output.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let mut problems = Vec::new();
    let entries = std::fs::read_dir(&args.problems)
        .with_context(|| format!("reading {}", args.problems.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    for path in &paths {
        problems.push(ProblemSpec::load(path)?);
    }
    if problems.is_empty() {
        bail!("no .json problems under {}", args.problems.display());
    }
    let solvers = load_solvers(&args.solvers)?;
    std::fs::create_dir_all(&args.output)
        .with_context(|| format!("creating {}", args.output.display()))?;

    println!(
        "benchmarking {} problems x {} strategies x {} solvers (timeout {}s, jobs {})",
        problems.len(),
        args.strategies.len(),
        solvers.len(),
        args.timeout,
        args.jobs
    );
    let records = run_benchmark(
        &problems,
        &solvers,
        &args.strategies,
        &BenchOptions {
            timeout: Duration::from_secs(args.timeout),
            jobs: args.jobs,
            depth: args.r,
            reduce_radicals: args.reduce_radicals.is_on(),
        },
    );
    let results_path = args.output.join("results.csv");
    write_records_csv(&records, &results_path)?;
    write_matrix_csv(&records, &args.output.join("matrix.csv"))?;
    println!("wrote {}", results_path.display());

    let disagreements = find_disagreements(&records);
    if !disagreements.is_empty() {
        for (problem, strategy) in &disagreements {
            eprintln!("soundness disagreement on {problem}/{strategy}");
        }
        return Ok(ExitCode::from(EXIT_DISAGREEMENT));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot(args: PlotArgs) -> Result<ExitCode> {
    let records = read_records_csv(&args.records)?;
    match args.kind {
        PlotKind::Survival => {
            let mut solvers: Vec<String> = records.iter().map(|r| r.solver.clone()).collect();
            solvers.sort();
            solvers.dedup();
            let series: Vec<_> = solvers
                .iter()
                .map(|s| survival_series(&records, s))
                .collect();
            let out = args.output.unwrap_or_else(|| PathBuf::from("survival.svg"));
            write_survival_svg(&series, &out)?;
            println!("wrote {}", out.display());
        }
        PlotKind::Scatter => {
            let (Some(a), Some(b)) = (&args.a, &args.b) else {
                bail!("scatter needs --a and --b solver names");
            };
            let points = scatter_series(&records, a, b)?;
            let out = args.output.unwrap_or_else(|| PathBuf::from("scatter.svg"));
            write_scatter_svg(&points, a, b, &out)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_examples(args: ExamplesArgs) -> Result<ExitCode> {
    let problems_dir = args.out.join("problems");
    std::fs::create_dir_all(&problems_dir)
        .with_context(|| format!("creating {}", problems_dir.display()))?;
    let problems = builtin::all();
    for p in &problems {
        let path = problems_dir.join(format!("{}.json", p.name));
        std::fs::write(&path, p.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("wrote {} problems to {}", problems.len(), problems_dir.display());

    if args.emit_smt2.is_on() {
        let dataset_dir = args.out.join("dataset");
        std::fs::create_dir_all(&dataset_dir)?;
        let mut n = 0;
        for p in &problems {
            // polynomial-only problems get a single script; problems with
            // rational atoms get one per strategy
            let refutation = build_refutation(p, 1)?;
            let has_rational = refutation.atoms().iter().any(|a| !a.lhs.is_polynomial());
            if has_rational {
                for s in Strategy::ALL {
                    let mut q = p.clone();
                    q.strategy = s;
                    let script = translate_to(&q, 1, true)?;
                    let path = dataset_dir.join(format!("{}_{}.smt2", p.name, s));
                    std::fs::write(&path, script)?;
                    n += 1;
                }
            } else {
                let script = translate_to(p, 1, true)?;
                let path = dataset_dir.join(format!("{}.smt2", p.name));
                std::fs::write(&path, script)?;
                n += 1;
            }
        }
        println!("wrote {n} scripts to {}", dataset_dir.display());
    }
    Ok(ExitCode::SUCCESS)
}
