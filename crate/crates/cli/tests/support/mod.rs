//! Test support: solver discovery for end-to-end runs and fake solver
//! scripts for harness checks.

use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};

use seqprove::smtlib::find_on_path;
use seqprove::SolverConfig;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .ancestors()
        .nth(2)
        .expect("crates/cli sits two levels under the workspace root")
        .to_path_buf()
}

/// A usable QF_NRA solver: a native binary if installed, otherwise the
/// bundled Z3 WASM wrapper.
pub fn test_solver() -> SolverConfig {
    for (name, bin) in [("z3", "z3"), ("cvc5", "cvc5"), ("yices", "yices-smt2")] {
        if find_on_path(bin).is_some() {
            return SolverConfig::new(name, &[bin, "{script}"], true);
        }
    }
    let wrapper = workspace_root().join("tools/z3-wasm/z3smt2.js");
    let installed = workspace_root().join("tools/z3-wasm/node_modules/z3-solver");
    if wrapper.is_file() && installed.is_dir() && find_on_path("node").is_some() {
        return SolverConfig::new(
            "z3-wasm",
            &["node", wrapper.to_str().unwrap(), "{script}"],
            true,
        );
    }
    panic!(
        "no QF_NRA solver available: install z3/cvc5/yices or run \
         `npm install` in tools/z3-wasm"
    );
}

/// Writes a one-entry solver configuration file for CLI invocations.
#[allow(dead_code)]
pub fn write_solvers_json(dir: &Path) -> PathBuf {
    let path = dir.join("solvers.json");
    let cfg = test_solver();
    fs::write(&path, serde_json::to_string(&vec![cfg]).unwrap()).unwrap();
    path
}

#[allow(dead_code)]
pub fn shell_solver(dir: &Path, name: &str, body: &str) -> SolverConfig {
    let path = dir.join(name);
    fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
    SolverConfig::new(name, &[path.to_str().unwrap(), "{script}"], false)
}

/// Odd sleep duration doubling as a marker for orphan detection.
#[allow(dead_code)]
pub const SLEEP_MARKER: &str = "5.31416";

#[allow(dead_code)]
pub fn sleeper_solver(dir: &Path) -> SolverConfig {
    shell_solver(
        dir,
        "fake-sleeper.sh",
        &format!("sleep {SLEEP_MARKER}\necho unsat"),
    )
}

/// True when some process on the system has `needle` in its command line.
#[allow(dead_code)]
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
