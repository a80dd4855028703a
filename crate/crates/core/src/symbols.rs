//! Naming conventions for the reserved variables of a problem.
//!
//! A problem references the current free term as `x` and its shift as
//! `s(x)`. Expanding the shift operator introduces the indexed fresh
//! variables `x_s1`, `x_s2`, ...; unrolling initial conditions introduces
//! the window variables `x1`, `x2`, ...; radical constants parse to
//! pseudo-variables named `sqrt(d)` until the algebraic encoding replaces
//! them.

use crate::algebra::Var;

/// The current free term of the sequence.
pub const FREE_TERM: &str = "x";

/// The reserved token for the shifted free term inside rule expressions.
pub const SHIFTED_FREE_TERM: &str = "s(x)";

pub fn free_term() -> Var {
    Var::new(FREE_TERM)
}

pub fn shifted_free_term() -> Var {
    Var::new(SHIFTED_FREE_TERM)
}

/// The fresh variable standing for the free term shifted `i` times (i >= 1).
pub fn shift_var(i: u32) -> Var {
    Var::new(&format!("x_s{i}"))
}

/// If `v` is a shift variable `x_si`, returns `i`.
pub fn parse_shift_var(v: &Var) -> Option<u32> {
    let rest = v.as_str().strip_prefix("x_s")?;
    let i: u32 = rest.parse().ok()?;
    (i >= 1 && !rest.starts_with('0')).then_some(i)
}

/// The window variable `x{i}` used by initial-condition unrolling (i >= 1).
pub fn window_var(i: u32) -> Var {
    Var::new(&format!("x{i}"))
}

pub fn parse_window_var(v: &Var) -> Option<u32> {
    let rest = v.as_str().strip_prefix('x')?;
    let i: u32 = rest.parse().ok()?;
    (i >= 1 && !rest.starts_with('0')).then_some(i)
}

/// The pseudo-variable carrying the radical `sqrt(d)` before encoding.
pub fn radical_var(d: u64) -> Var {
    Var::new(&format!("sqrt({d})"))
}

pub fn parse_radical_var(v: &Var) -> Option<u64> {
    let rest = v.as_str().strip_prefix("sqrt(")?.strip_suffix(')')?;
    rest.parse().ok()
}

/// True when `v` is one of the machine-managed names a problem must not
/// declare itself.
pub fn is_reserved(v: &Var) -> bool {
    v.as_str() == FREE_TERM
        || v.as_str() == SHIFTED_FREE_TERM
        || parse_shift_var(v).is_some()
        || parse_window_var(v).is_some()
        || parse_radical_var(v).is_some()
}
