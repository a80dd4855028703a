//! SMT-LIB 2 output and external solver execution.

mod emit;
pub mod sexp;
mod solver;

pub use emit::{emit_script, EmitOptions};
pub use solver::{
    detect_solvers, find_on_path, parse_model, parse_status, run_solver, Model, SolverConfig,
    SolverResult, Status, SCRIPT_PLACEHOLDER,
};
