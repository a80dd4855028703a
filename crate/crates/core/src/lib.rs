//! Induction proofs of sequence inequalities through SMT.
//!
//! A claim about recurrence-defined sequences, for example "the product of
//! positive reals summing to n is at most 1", is proved by showing that a
//! conjunction of the hypotheses at depths 0..r together with the negated
//! claim at depth r is unsatisfiable, and that the first r explicit
//! instances hold. Both kinds of query are compiled to QF_NRA scripts and
//! dispatched to an external solver.
//!
//! The crate is organized as a pipeline:
//!
//! - [`algebra`]: exact polynomials and rational functions over Q.
//! - [`formula`]: relational atoms, boolean structure, the shift operator.
//! - [`parse`]: the infix expression / relation syntax used in problem files.
//! - [`problem`] / [`induction`]: problem descriptions, query construction,
//!   and the iterative proof loop.
//! - [`preprocess`]: denominator-clearing strategies and the encoding of
//!   square-root constants into fresh constrained variables.
//! - [`smtlib`]: script emission, external solver processes, result parsing.
//! - [`bench`] / [`plot`]: batch runs, CSV outputs, survival and scatter
//!   charts.

pub mod algebra;
pub mod bench;
pub mod builtin;
pub mod error;
pub mod formula;
pub mod induction;
pub mod parse;
pub mod plot;
pub mod preprocess;
pub mod problem;
pub mod smtlib;
pub mod symbols;

#[cfg(any(test, feature = "testgen"))]
pub mod testgen;

pub use algebra::{poly_gcd, Monomial, Polynomial, Rational, RationalFunction, RfValue, Var};
pub use error::{Error, Result};
pub use formula::{Atom, Formula, RelOp, ShiftMap, ShiftRule, Truth};
pub use induction::{prove, InductionConfig, ProofOutcome, ProofReport, QueryKind, TimeoutPolicy};
pub use preprocess::{ClearedAtom, Strategy};
pub use problem::{ProblemSpec, SequenceVarDecl};
pub use smtlib::{emit_script, run_solver, EmitOptions, SolverConfig, SolverResult, Status};
