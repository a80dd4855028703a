//! Fake solvers for harness tests: tiny shell scripts standing in for a
//! real SMT process.

use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::Path;

use seqprove::SolverConfig;

pub fn shell_solver(dir: &Path, name: &str, body: &str) -> SolverConfig {
    let path = dir.join(name);
    fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
    SolverConfig::new(name, &[path.to_str().unwrap(), "{script}"], false)
}

/// Always answers `answer`, instantly.
pub fn echo_solver(dir: &Path, answer: &str) -> SolverConfig {
    shell_solver(dir, &format!("fake-{answer}.sh"), &format!("echo {answer}"))
}

/// Sleeps past any reasonable test timeout, then answers unsat. The odd
/// sleep duration doubles as a marker to find stray processes.
pub const SLEEP_MARKER: &str = "5.31416";

pub fn sleeper_solver(dir: &Path) -> SolverConfig {
    shell_solver(
        dir,
        "fake-sleeper.sh",
        &format!("sleep {SLEEP_MARKER}\necho unsat"),
    )
}

/// Answers the given lines one call at a time (state kept next to the
/// script); calls past the end produce empty output.
pub fn scripted_solver(dir: &Path, name: &str, answers: &[&str]) -> SolverConfig {
    fs::write(dir.join(format!("{name}.answers")), answers.join("\n")).unwrap();
    let body = format!(
        r#"d="$(dirname "$0")"
n=$(cat "$d/{name}.counter" 2>/dev/null || echo 0)
echo $((n+1)) > "$d/{name}.counter"
sed -n "$((n+1))p" "$d/{name}.answers""#
    );
    shell_solver(dir, &format!("{name}.sh"), &body)
}

/// Answers sat with a one-variable model.
pub fn sat_with_model_solver(dir: &Path, var: &str, value: &str) -> SolverConfig {
    let body = format!(
        "echo sat\nprintf '(model (define-fun {var} () Real {value}))\\n'"
    );
    let mut cfg = shell_solver(dir, "fake-model.sh", &body);
    cfg.models = true;
    cfg
}

/// True when some process on the system has `needle` in its command line.
pub fn process_with_arg_exists(needle: &str) -> bool {
    let Ok(entries) = fs::read_dir("/proc") else {
        return false;
    };
    for entry in entries.flatten() {
        let name = entry.file_name();
        let Some(pid) = name.to_str() else { continue };
        if !pid.bytes().all(|b| b.is_ascii_digit()) {
            continue;
        }
        if let Ok(cmdline) = fs::read(entry.path().join("cmdline")) {
            if String::from_utf8_lossy(&cmdline).contains(needle) {
                return true;
            }
        }
    }
    false
}
