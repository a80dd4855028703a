//! Batch benchmarking: every problem under every strategy against every
//! solver, with a bounded worker pool, CSV outputs, and the series
//! underlying survival and scatter charts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;
use std::sync::mpsc;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::induction::{build_refutation, emit_options, prepare_query};
use crate::preprocess::Strategy;
use crate::problem::ProblemSpec;
use crate::smtlib::{emit_script, run_solver, SolverConfig, Status};

/// One benchmark measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub problem: String,
    pub strategy: Strategy,
    pub solver: String,
    pub status: Status,
    pub time_s: f64,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub timeout: Duration,
    /// Maximum concurrent solver processes. More than one distorts
    /// wall-clock times; the default stays sequential.
    pub jobs: usize,
    /// Refutation depth the benchmark scripts are generated at.
    pub depth: u32,
    pub reduce_radicals: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            timeout: Duration::from_secs(1200),
            jobs: 1,
            depth: 1,
            reduce_radicals: true,
        }
    }
}

/// Runs the full (problem x strategy x solver) grid. One record per cell,
/// in deterministic order; a failure to build or run one cell becomes an
/// `error` record rather than aborting the batch.
pub fn run_benchmark(
    problems: &[ProblemSpec],
    solvers: &[SolverConfig],
    strategies: &[Strategy],
    opts: &BenchOptions,
) -> Vec<BenchRecord> {
    // scripts are solver-independent; build each (problem, strategy) once
    let mut scripts: Vec<(String, Strategy, std::result::Result<Arc<String>, String>)> =
        Vec::new();
    for p in problems {
        for &s in strategies {
            let script = build_refutation(p, opts.depth)
                .and_then(|f| prepare_query(&f, s, opts.reduce_radicals))
                .and_then(|f| {
                    let kind = format!("refutation depth r={}", opts.depth);
                    emit_script(&f, &emit_options(p, &kind, s, false))
                });
            scripts.push((p.name.clone(), s, script.map(Arc::new).map_err(|e| e.to_string())));
        }
    }

    struct Task {
        problem: String,
        strategy: Strategy,
        solver: SolverConfig,
        script: std::result::Result<Arc<String>, String>,
    }

    let mut queue: VecDeque<Task> = VecDeque::new();
    for (problem, strategy, script) in &scripts {
        for solver in solvers {
            queue.push_back(Task {
                problem: problem.clone(),
                strategy: *strategy,
                solver: solver.clone(),
                script: script.clone(),
            });
        }
    }

    let n_tasks = queue.len();
    let queue = Arc::new(Mutex::new(queue));
    let (tx, rx) = mpsc::channel::<BenchRecord>();
    let workers = opts.jobs.max(1).min(n_tasks.max(1));
    let mut handles = Vec::with_capacity(workers);
    for _ in 0..workers {
        let queue = Arc::clone(&queue);
        let tx = tx.clone();
        let timeout = opts.timeout;
        handles.push(std::thread::spawn(move || loop {
            let task = match queue.lock().unwrap().pop_front() {
                Some(t) => t,
                None => break,
            };
            let record = match &task.script {
                Ok(script) => {
                    let res = run_solver(script, &task.solver, timeout);
                    BenchRecord {
                        problem: task.problem,
                        strategy: task.strategy,
                        solver: task.solver.name,
                        status: res.status,
                        time_s: res.time_s(),
                    }
                }
                Err(_) => BenchRecord {
                    problem: task.problem,
                    strategy: task.strategy,
                    solver: task.solver.name,
                    status: Status::Error,
                    time_s: 0.0,
                },
            };
            let _ = tx.send(record);
        }));
    }
    drop(tx);

    let mut records: Vec<BenchRecord> = rx.into_iter().collect();
    for h in handles {
        let _ = h.join();
    }
    records.sort_by(|a, b| {
        (&a.problem, a.strategy, &a.solver).cmp(&(&b.problem, b.strategy, &b.solver))
    });
    records
}

/// Survival curve of one solver: solved instances sorted by time,
/// cumulated.
#[derive(Clone, Debug, PartialEq)]
pub struct SurvivalSeries {
    pub solver: String,
    /// `(k, total seconds spent on the k fastest solved instances)`.
    pub points: Vec<(u32, f64)>,
}

/// Sorts the answered instances of one solver by time and cumulates;
/// timeouts, errors and unknowns are discarded.
pub fn survival_series(records: &[BenchRecord], solver: &str) -> SurvivalSeries {
    let mut times: Vec<f64> = records
        .iter()
        .filter(|r| r.solver == solver && r.status.is_answer())
        .map(|r| r.time_s)
        .collect();
    times.sort_by(|a, b| a.partial_cmp(b).expect("times are finite"));
    let mut points = Vec::with_capacity(times.len());
    let mut total = 0.0;
    for (i, t) in times.iter().enumerate() {
        total += t;
        points.push((i as u32 + 1, total));
    }
    SurvivalSeries {
        solver: solver.to_string(),
        points,
    }
}

/// One instance compared across two solvers.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterPoint {
    /// `problem/strategy` the pair belongs to.
    pub problem: String,
    pub time_a: f64,
    pub time_b: f64,
    /// Consensus verdict; the answering side wins when only one answered,
    /// `None` when neither did.
    pub label: Option<Status>,
    /// The two solvers answered sat vs. unsat.
    pub disagreement: bool,
}

/// Pairs every instance attempted by both solvers. Timed-out sides keep
/// their recorded (clamped) time.
pub fn scatter_series(
    records: &[BenchRecord],
    solver_a: &str,
    solver_b: &str,
) -> Result<Vec<ScatterPoint>> {
    for solver in [solver_a, solver_b] {
        if !records.iter().any(|r| r.solver == solver) {
            return Err(Error::MissingSolver(solver.to_string()));
        }
    }
    let by_key = |solver: &str| -> BTreeMap<(String, Strategy), &BenchRecord> {
        records
            .iter()
            .filter(|r| r.solver == solver)
            .map(|r| ((r.problem.clone(), r.strategy), r))
            .collect()
    };
    let a_records = by_key(solver_a);
    let b_records = by_key(solver_b);
    let mut out = Vec::new();
    for (key, a) in &a_records {
        let Some(b) = b_records.get(key) else {
            continue;
        };
        let label = match (a.status, b.status) {
            (sa, sb) if sa.is_answer() && sb.is_answer() => Some(sa),
            (sa, _) if sa.is_answer() => Some(sa),
            (_, sb) if sb.is_answer() => Some(sb),
            _ => None,
        };
        let disagreement = a.status.is_answer() && b.status.is_answer() && a.status != b.status;
        out.push(ScatterPoint {
            problem: format!("{}/{}", key.0, key.1),
            time_a: a.time_s,
            time_b: b.time_s,
            label,
            disagreement,
        });
    }
    Ok(out)
}

/// Instances where two solvers answered sat vs. unsat on the same script.
pub fn find_disagreements(records: &[BenchRecord]) -> Vec<(String, Strategy)> {
    let mut verdicts: BTreeMap<(String, Strategy), BTreeSet<Status>> = BTreeMap::new();
    for r in records {
        if r.status.is_answer() {
            verdicts
                .entry((r.problem.clone(), r.strategy))
                .or_default()
                .insert(r.status);
        }
    }
    verdicts
        .into_iter()
        .filter(|(_, statuses)| statuses.len() > 1)
        .map(|(key, _)| key)
        .collect()
}

/// Writes `problem,strategy,solver,status,time_s` rows.
pub fn write_records_csv(records: &[BenchRecord], path: &Path) -> Result<()> {
    let ctx = || format!("writing {}", path.display());
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Csv {
        context: ctx(),
        source: e,
    })?;
    if records.is_empty() {
        // serde never fires for an empty list, so the header is manual
        w.write_record(["problem", "strategy", "solver", "status", "time_s"])
            .map_err(|e| Error::Csv {
                context: ctx(),
                source: e,
            })?;
    }
    for r in records {
        w.serialize(r).map_err(|e| Error::Csv {
            context: ctx(),
            source: e,
        })?;
    }
    w.flush().map_err(|e| Error::io(ctx(), e))?;
    Ok(())
}

pub fn read_records_csv(path: &Path) -> Result<Vec<BenchRecord>> {
    let ctx = || format!("reading {}", path.display());
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::Csv {
        context: ctx(),
        source: e,
    })?;
    r.deserialize()
        .collect::<std::result::Result<Vec<BenchRecord>, _>>()
        .map_err(|e| Error::Csv {
            context: ctx(),
            source: e,
        })
}

/// Writes the per-instance status grid: one row per `problem/strategy`,
/// one column per solver.
pub fn write_matrix_csv(records: &[BenchRecord], path: &Path) -> Result<()> {
    let solvers: BTreeSet<&String> = records.iter().map(|r| &r.solver).collect();
    let mut rows: BTreeMap<(String, Strategy), BTreeMap<&String, Status>> = BTreeMap::new();
    for r in records {
        rows.entry((r.problem.clone(), r.strategy))
            .or_default()
            .insert(&r.solver, r.status);
    }
    let ctx = || format!("writing {}", path.display());
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Csv {
        context: ctx(),
        source: e,
    })?;
    let mut header = vec!["problem".to_string(), "strategy".to_string()];
    header.extend(solvers.iter().map(|s| s.to_string()));
    w.write_record(&header).map_err(|e| Error::Csv {
        context: ctx(),
        source: e,
    })?;
    for ((problem, strategy), cells) in &rows {
        let mut row = vec![problem.clone(), strategy.to_string()];
        for s in &solvers {
            row.push(
                cells
                    .get(s)
                    .map(|st| st.to_string())
                    .unwrap_or_else(|| "missing".to_string()),
            );
        }
        w.write_record(&row).map_err(|e| Error::Csv {
            context: ctx(),
            source: e,
        })?;
    }
    w.flush().map_err(|e| Error::io(ctx(), e))?;
    Ok(())
}
