//! External solver processes: spawn, enforce a wall-clock timeout, parse
//! the verdict and (when present) the model.
//!
//! Each run writes the script to its own temporary `.smt2` file and
//! launches the configured command in a fresh process group; on timeout
//! the whole group is killed, so helper processes spawned by a wrapper
//! script die with it.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::sexp::{self, Sexp};
use crate::error::{Error, Result};

/// Placeholder in a command template replaced by the script path.
pub const SCRIPT_PLACEHOLDER: &str = "{script}";

/// An external solver: a display name and the command to run on a script.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolverConfig {
    pub name: String,
    /// Command and arguments; occurrences of `{script}` are replaced by
    /// the script path, which is appended when no placeholder is present.
    pub cmd: Vec<String>,
    /// Whether the solver answers `(get-model)` on sat.
    pub models: bool,
}

impl SolverConfig {
    pub fn new(name: &str, cmd: &[&str], models: bool) -> Self {
        SolverConfig {
            name: name.to_string(),
            cmd: cmd.iter().map(|s| s.to_string()).collect(),
            models,
        }
    }

    /// Loads a JSON list of solver configurations.
    pub fn load_list(path: &Path) -> Result<Vec<SolverConfig>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|e| Error::Json {
            context: format!("solver config {}", path.display()),
            source: e,
        })
    }

    fn argv(&self, script: &Path) -> Vec<String> {
        let mut argv: Vec<String> = Vec::with_capacity(self.cmd.len() + 1);
        let mut substituted = false;
        for part in &self.cmd {
            if part.contains(SCRIPT_PLACEHOLDER) {
                substituted = true;
                argv.push(part.replace(SCRIPT_PLACEHOLDER, &script.display().to_string()));
            } else {
                argv.push(part.clone());
            }
        }
        if !substituted {
            argv.push(script.display().to_string());
        }
        argv
    }
}

/// Solver verdict.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
    Timeout,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
            Status::Unknown => "unknown",
            Status::Timeout => "timeout",
            Status::Error => "error",
        }
    }

    /// Sat or unsat: the solver actually answered.
    pub fn is_answer(self) -> bool {
        matches!(self, Status::Sat | Status::Unsat)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sat" => Ok(Status::Sat),
            "unsat" => Ok(Status::Unsat),
            "unknown" => Ok(Status::Unknown),
            "timeout" => Ok(Status::Timeout),
            "error" => Ok(Status::Error),
            other => Err(Error::UnsupportedConstruct(format!(
                "unknown status `{other}`"
            ))),
        }
    }
}

/// Variable assignment extracted from a sat answer; values keep the
/// solver's own spelling.
pub type Model = BTreeMap<String, String>;

/// Outcome of one solver run.
#[derive(Clone, Debug)]
pub struct SolverResult {
    pub status: Status,
    pub wall: Duration,
    pub model: Option<Model>,
    /// Captured stdout (stderr for spawn/exit failures).
    pub raw: String,
}

impl SolverResult {
    pub fn time_s(&self) -> f64 {
        // millisecond precision keeps records and CSVs stable
        (self.wall.as_secs_f64() * 1000.0).round() / 1000.0
    }

    /// True when the process could not even be started.
    pub fn spawn_failed(&self) -> bool {
        self.status == Status::Error && self.raw.starts_with(SPAWN_FAILURE)
    }
}

const SPAWN_FAILURE: &str = "spawn failure:";

/// First meaningful line decides: `sat`, `unsat` or `unknown`; anything
/// else is an error.
pub fn parse_status(output: &str) -> Status {
    match output.lines().map(str::trim).find(|l| !l.is_empty()) {
        Some("sat") => Status::Sat,
        Some("unsat") => Status::Unsat,
        Some("unknown") => Status::Unknown,
        _ => Status::Error,
    }
}

/// Pulls `(define-fun name () Sort value)` assignments out of a model
/// answer.
pub fn parse_model(output: &str) -> Option<Model> {
    let forms = sexp::parse_all(output)?;
    let mut model = Model::new();
    collect_define_funs(&forms, &mut model);
    (!model.is_empty()).then_some(model)
}

fn collect_define_funs(forms: &[Sexp], model: &mut Model) {
    for form in forms {
        let Some(items) = form.list() else { continue };
        match items.first().and_then(Sexp::sym) {
            Some("define-fun") if items.len() >= 5 => {
                // zero-arity functions only: (define-fun name () Sort value)
                if items[2].list().is_some_and(|args| args.is_empty()) {
                    if let Some(name) = items[1].sym() {
                        model.insert(name.to_string(), items[4].to_string());
                    }
                }
            }
            Some("model") => collect_define_funs(&items[1..], model),
            _ => collect_define_funs(items, model),
        }
    }
}

/// Runs the solver on a script with a wall-clock timeout. Never panics
/// and never returns `Err`: failures are reported through the status.
pub fn run_solver(script: &str, cfg: &SolverConfig, timeout: Duration) -> SolverResult {
    let start = Instant::now();
    let error = |raw: String| SolverResult {
        status: Status::Error,
        wall: start.elapsed(),
        model: None,
        raw,
    };

    let file = match write_script_file(script) {
        Ok(f) => f,
        Err(e) => return error(format!("{SPAWN_FAILURE} cannot write script file: {e}")),
    };
    let argv = cfg.argv(file.path());
    let mut command = Command::new(&argv[0]);
    command
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    // own process group, so a timeout kill takes helpers down too
    std::os::unix::process::CommandExt::process_group(&mut command, 0);

    let mut child = match command.spawn() {
        Ok(c) => c,
        Err(e) => return error(format!("{SPAWN_FAILURE} {}: {e}", argv[0])),
    };

    // drain pipes on the side so a chatty solver cannot block on a full pipe
    let stdout = drain(child.stdout.take());
    let stderr = drain(child.stderr.take());

    let status = match wait_with_deadline(&mut child, start, timeout) {
        WaitOutcome::Exited(status) => status,
        WaitOutcome::TimedOut => {
            kill_process_group(&child);
            let _ = child.wait();
            let _ = stdout.join();
            let _ = stderr.join();
            return SolverResult {
                status: Status::Timeout,
                wall: start.elapsed(),
                model: None,
                raw: String::new(),
            };
        }
        WaitOutcome::WaitFailed(e) => {
            kill_process_group(&child);
            let _ = child.wait();
            return error(format!("wait failed: {e}"));
        }
    };
    let wall = start.elapsed();
    let out = stdout.join().unwrap_or_default();
    let err = stderr.join().unwrap_or_default();

    let parsed = parse_status(&out);
    if parsed == Status::Error {
        let detail = if status.success() {
            format!("unparseable output: {out}")
        } else {
            format!("exit {status}: {err}")
        };
        return SolverResult {
            status: Status::Error,
            wall,
            model: None,
            raw: detail,
        };
    }
    let model = if parsed == Status::Sat && cfg.models {
        parse_model(&out)
    } else {
        None
    };
    SolverResult {
        status: parsed,
        wall,
        model,
        raw: out,
    }
}

fn write_script_file(script: &str) -> std::io::Result<tempfile::NamedTempFile> {
    use std::io::Write;
    let mut file = tempfile::Builder::new()
        .prefix("seqprove-")
        .suffix(".smt2")
        .tempfile()?;
    file.write_all(script.as_bytes())?;
    file.flush()?;
    Ok(file)
}

fn drain(pipe: Option<impl Read + Send + 'static>) -> std::thread::JoinHandle<String> {
    std::thread::spawn(move || {
        let mut out = String::new();
        if let Some(mut pipe) = pipe {
            let _ = pipe.read_to_string(&mut out);
        }
        out
    })
}

enum WaitOutcome {
    Exited(std::process::ExitStatus),
    TimedOut,
    WaitFailed(std::io::Error),
}

fn wait_with_deadline(child: &mut Child, start: Instant, timeout: Duration) -> WaitOutcome {
    loop {
        match child.try_wait() {
            Ok(Some(status)) => return WaitOutcome::Exited(status),
            Ok(None) => {
                if start.elapsed() >= timeout {
                    return WaitOutcome::TimedOut;
                }
                std::thread::sleep(Duration::from_millis(10));
            }
            Err(e) => return WaitOutcome::WaitFailed(e),
        }
    }
}

fn kill_process_group(child: &Child) {
    let pgid = child.id() as libc::pid_t;
    unsafe {
        libc::killpg(pgid, libc::SIGKILL);
    }
}

/// Looks for a runnable QF_NRA solver: `$SEQPROVE_SOLVER_CMD` (a JSON
/// solver config) first, then well-known binaries on `PATH`, then the
/// bundled Z3 WASM wrapper (`$SEQPROVE_Z3_WASM` or `tools/z3-wasm/` under
/// the current directory).
pub fn detect_solvers() -> Vec<SolverConfig> {
    let mut out = Vec::new();
    if let Ok(json) = std::env::var("SEQPROVE_SOLVER_CMD") {
        if let Ok(cfg) = serde_json::from_str::<SolverConfig>(&json) {
            out.push(cfg);
        }
    }
    for (name, bin, models) in [
        ("z3", "z3", true),
        ("cvc5", "cvc5", true),
        ("yices", "yices-smt2", true),
    ] {
        if find_on_path(bin).is_some() {
            out.push(SolverConfig::new(name, &[bin, SCRIPT_PLACEHOLDER], models));
        }
    }
    if let Some(cfg) = z3_wasm_wrapper() {
        out.push(cfg);
    }
    out
}

fn z3_wasm_wrapper() -> Option<SolverConfig> {
    let script = match std::env::var("SEQPROVE_Z3_WASM") {
        Ok(path) => PathBuf::from(path),
        Err(_) => PathBuf::from("tools/z3-wasm/z3smt2.js"),
    };
    if !script.is_file() || find_on_path("node").is_none() {
        return None;
    }
    Some(SolverConfig::new(
        "z3-wasm",
        &["node", &script.display().to_string(), SCRIPT_PLACEHOLDER],
        true,
    ))
}

pub fn find_on_path(bin: &str) -> Option<PathBuf> {
    let path = std::env::var_os("PATH")?;
    for dir in std::env::split_paths(&path) {
        let candidate = dir.join(bin);
        if candidate.is_file() {
            return Some(candidate);
        }
    }
    None
}
