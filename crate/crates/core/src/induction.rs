//! The iterative induction engine.
//!
//! For growing hypothesis depth `r`, two kinds of satisfiability query are
//! produced. The explicit instance at index `k` is certified by the
//! unsatisfiability of
//!
//! ```text
//! inst(assumptions, t) ∧ ... ∧ inst(assumptions, k) ∧ ¬ inst(claim, k)
//! ```
//!
//! and the induction step at depth `r` by the unsatisfiability of the
//! refutation formula
//!
//! ```text
//! ψ ∧ s(ψ) ∧ ... ∧ s^r(ψ) ∧ φ ∧ s(φ) ∧ ... ∧ s^{r-1}(φ) ∧ ¬ s^r(φ)
//! ```
//!
//! A sat answer to an instance check disproves the claim outright; a sat
//! answer to the refutation merely says depth `r` hypotheses are not
//! enough, so `r` grows and the (cached) instance window widens with it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Duration;

use crate::algebra::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::preprocess::{apply_strategy, encode_algebraic, Strategy};
use crate::problem::ProblemSpec;
use crate::smtlib::{emit_script, run_solver, EmitOptions, Model, SolverConfig, SolverResult, Status};
use crate::symbols;

/// What to do when a refutation query times out or comes back unknown.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TimeoutPolicy {
    /// Stop and report `Unknown` (default; deeper queries are rarely easier).
    Abort,
    /// Treat it like a sat answer and move on to depth `r + 1`.
    Continue,
}

#[derive(Clone, Debug)]
pub struct InductionConfig {
    pub max_r: u32,
    pub solver: SolverConfig,
    pub timeout: Duration,
    pub on_timeout: TimeoutPolicy,
    pub reduce_radicals: bool,
}

impl InductionConfig {
    pub fn new(solver: SolverConfig) -> Self {
        InductionConfig {
            max_r: 5,
            solver,
            timeout: Duration::from_secs(1200),
            on_timeout: TimeoutPolicy::Abort,
            reduce_radicals: true,
        }
    }
}

/// Which query a trace entry belongs to.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum QueryKind {
    InitialCheck { k: u32 },
    Refutation { r: u32 },
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryKind::InitialCheck { k } => write!(f, "initial condition k={k}"),
            QueryKind::Refutation { r } => write!(f, "refutation depth r={r}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub kind: QueryKind,
    pub result: SolverResult,
}

#[derive(Clone, Debug)]
pub enum ProofOutcome {
    /// Every instance in the window held and the step was refuted.
    Proved { t: u32, r: u32 },
    /// Instance `k` is satisfiable together with the negated claim: the
    /// claim is false (or under-constrained) at that index.
    FailedInitial { k: u32, witness: Option<Model> },
    /// Depth budget exhausted or a query could not be decided.
    Unknown { r_reached: u32, witness: Option<Model> },
    /// The solver process failed.
    SolverError { detail: String },
}

impl fmt::Display for ProofOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofOutcome::Proved { t, r } => write!(f, "Proved at t={t}, r={r}"),
            ProofOutcome::FailedInitial { k, witness } => {
                write!(f, "Failed initial condition at k={k}")?;
                if let Some(w) = witness {
                    let parts: Vec<String> =
                        w.iter().map(|(v, val)| format!("{v} = {val}")).collect();
                    write!(f, " (witness: {})", parts.join(", "))?;
                }
                Ok(())
            }
            ProofOutcome::Unknown { r_reached, .. } => {
                write!(f, "Unknown after r={r_reached}")
            }
            ProofOutcome::SolverError { detail } => write!(f, "Solver error: {detail}"),
        }
    }
}

/// Outcome plus the full query trace.
#[derive(Clone, Debug)]
pub struct ProofReport {
    pub outcome: ProofOutcome,
    pub trace: Vec<TraceEntry>,
}

impl ProofReport {
    /// Consistency of the trace with the reported outcome: `Proved`
    /// requires every instance check and the final refutation to be unsat,
    /// and no query may follow an unsat refutation.
    pub fn audit(&self) -> bool {
        let refutation_unsat_at = self.trace.iter().position(|e| {
            matches!(e.kind, QueryKind::Refutation { .. }) && e.result.status == Status::Unsat
        });
        if let Some(idx) = refutation_unsat_at {
            if idx + 1 != self.trace.len() {
                return false;
            }
        }
        match &self.outcome {
            ProofOutcome::Proved { .. } => {
                let initials_ok = self
                    .trace
                    .iter()
                    .filter(|e| matches!(e.kind, QueryKind::InitialCheck { .. }))
                    .all(|e| e.result.status == Status::Unsat);
                initials_ok && refutation_unsat_at.is_some()
            }
            _ => refutation_unsat_at.is_none(),
        }
    }
}

/// Sequence values at the absolute indices `t ..= k`, each a map from
/// sequence variable to an expression over the window variables
/// `x1 .. x_{k-t+1}`.
fn unroll_window(p: &ProblemSpec, k: u32) -> Result<Vec<BTreeMap<Var, RationalFunction>>> {
    debug_assert!(k >= p.t);
    let mut levels = Vec::with_capacity((k - p.t + 1) as usize);
    let base: BTreeMap<Var, RationalFunction> = p
        .seq_vars
        .iter()
        .map(|sv| (sv.name.clone(), sv.init.clone()))
        .collect();
    levels.push(base);
    for i in p.t..k {
        let window_pos = i - p.t + 1;
        let prev = levels.last().unwrap();
        let mut bindings = prev.clone();
        bindings.insert(
            symbols::free_term(),
            RationalFunction::variable(symbols::window_var(window_pos)),
        );
        bindings.insert(
            symbols::shifted_free_term(),
            RationalFunction::variable(symbols::window_var(window_pos + 1)),
        );
        let mut next = BTreeMap::new();
        for sv in &p.seq_vars {
            next.insert(sv.name.clone(), sv.rule.step.subst(&bindings)?);
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Explicit values of every sequence variable at index `k`, over
/// `x1 .. x_{k-t+1}`.
pub fn unroll_initial(p: &ProblemSpec, k: u32) -> Result<BTreeMap<Var, RationalFunction>> {
    Ok(unroll_window(p, k)?.pop().expect("window is nonempty"))
}

/// Instantiates a claim or assumption at the absolute index `i`, given the
/// unrolled sequence values at that index.
fn instantiate(
    p: &ProblemSpec,
    f: &Formula,
    values: &BTreeMap<Var, RationalFunction>,
    i: u32,
) -> Result<Formula> {
    let mut bindings = values.clone();
    bindings.insert(
        symbols::free_term(),
        RationalFunction::variable(symbols::window_var(i - p.t + 1)),
    );
    for v in f.vars() {
        let known = bindings.contains_key(&v) || symbols::parse_radical_var(&v).is_some();
        if !known {
            return Err(Error::InitialInstantiation(v.as_str().to_string()));
        }
    }
    f.substitute(&bindings)
}

/// The query certifying the explicit instance at index `k`: assumptions
/// instantiated across the window conjoined with the negated claim
/// instance. Unsat certifies the instance.
pub fn build_initial_check(p: &ProblemSpec, k: u32) -> Result<Formula> {
    let levels = unroll_window(p, k)?;
    let mut parts = Vec::new();
    for (offset, values) in levels.iter().enumerate() {
        parts.push(instantiate(p, &p.assumptions, values, p.t + offset as u32)?);
    }
    parts.push(instantiate(p, &p.claim, levels.last().unwrap(), k)?.negate());
    Ok(Formula::and(parts))
}

/// The depth-`r` refutation formula.
pub fn build_refutation(p: &ProblemSpec, r: u32) -> Result<Formula> {
    debug_assert!(r >= 1);
    let shift = p.shift_map();
    let mut parts = Vec::new();
    for i in 0..=r {
        parts.push(shift.shift_formula(&p.assumptions, i)?);
    }
    for i in 0..r {
        parts.push(shift.shift_formula(&p.claim, i)?);
    }
    parts.push(shift.shift_formula(&p.claim, r)?.negate());
    Ok(Formula::and(parts))
}

/// Applies the denominator strategy and the radical encoding to a built
/// query, yielding the formula a script is emitted from.
pub fn prepare_query(f: &Formula, strategy: Strategy, reduce_radicals: bool) -> Result<Formula> {
    encode_algebraic(&apply_strategy(f, strategy), reduce_radicals)
}

/// Emit options for a prepared query of the given problem.
pub fn emit_options(
    p: &ProblemSpec,
    kind: &str,
    strategy: Strategy,
    produce_models: bool,
) -> EmitOptions {
    EmitOptions {
        logic: "QF_NRA".to_string(),
        produce_models,
        header: vec![
            format!("problem: {}", p.name),
            format!("query: {kind}"),
            format!("strategy: {strategy}"),
        ],
        allow_division: strategy == Strategy::Guard,
    }
}

/// Runs the full iteration: instance checks and refutations for
/// `r = 1 ..= max_r`.
pub fn prove(p: &ProblemSpec, cfg: &InductionConfig) -> Result<ProofReport> {
    let strategy = p.strategy;
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut certified: BTreeSet<u32> = BTreeSet::new();
    let mut last_witness: Option<Model> = None;

    let report = |outcome: ProofOutcome, trace: Vec<TraceEntry>| {
        Ok(ProofReport { outcome, trace })
    };

    for r in 1..=cfg.max_r {
        for k in p.t..p.t + r {
            if certified.contains(&k) {
                continue;
            }
            let kind = QueryKind::InitialCheck { k };
            let query = prepare_query(&build_initial_check(p, k)?, strategy, cfg.reduce_radicals)?;
            let opts = emit_options(p, &kind.to_string(), strategy, cfg.solver.models);
            let script = emit_script(&query, &opts)?;
            let result = run_solver(&script, &cfg.solver, cfg.timeout);
            let status = result.status;
            let model = result.model.clone();
            trace.push(TraceEntry { kind, result });
            match status {
                Status::Unsat => {
                    certified.insert(k);
                }
                Status::Sat => {
                    return report(ProofOutcome::FailedInitial { k, witness: model }, trace)
                }
                Status::Timeout | Status::Unknown => {
                    // a wider window cannot make this same check pass
                    return report(
                        ProofOutcome::Unknown {
                            r_reached: r.saturating_sub(1),
                            witness: last_witness,
                        },
                        trace,
                    );
                }
                Status::Error => {
                    return report(
                        ProofOutcome::SolverError {
                            detail: trace.last().unwrap().result.raw.clone(),
                        },
                        trace,
                    )
                }
            }
        }

        let kind = QueryKind::Refutation { r };
        let query = prepare_query(&build_refutation(p, r)?, strategy, cfg.reduce_radicals)?;
        let opts = emit_options(p, &kind.to_string(), strategy, cfg.solver.models);
        let script = emit_script(&query, &opts)?;
        let result = run_solver(&script, &cfg.solver, cfg.timeout);
        let status = result.status;
        let model = result.model.clone();
        trace.push(TraceEntry { kind, result });
        match status {
            Status::Unsat => return report(ProofOutcome::Proved { t: p.t, r }, trace),
            Status::Sat => last_witness = model,
            Status::Timeout | Status::Unknown => match cfg.on_timeout {
                TimeoutPolicy::Abort => {
                    return report(
                        ProofOutcome::Unknown {
                            r_reached: r,
                            witness: last_witness,
                        },
                        trace,
                    )
                }
                TimeoutPolicy::Continue => {}
            },
            Status::Error => {
                return report(
                    ProofOutcome::SolverError {
                        detail: trace.last().unwrap().result.raw.clone(),
                    },
                    trace,
                )
            }
        }
    }

    report(
        ProofOutcome::Unknown {
            r_reached: cfg.max_r,
            witness: last_witness,
        },
        trace,
    )
}
