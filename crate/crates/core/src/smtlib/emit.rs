//! Deterministic serialization of formulas to SMT-LIB 2 scripts.
//!
//! Identical formulas yield byte-identical scripts: variables are declared
//! in sorted order and asserts follow the canonical conjunct order. Powers
//! are expanded to explicit products and rationals printed as `(/ n d)`,
//! which every QF_NRA solver accepts.

use num_traits::{One, Signed};

use crate::algebra::{Monomial, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::formula::{Formula, RelOp};
use crate::symbols;
use crate::Rational;

#[derive(Clone, Debug)]
pub struct EmitOptions {
    pub logic: String,
    pub produce_models: bool,
    /// Comment lines placed at the top of the script (without the `; `).
    pub header: Vec<String>,
    /// Permit division atoms (guard strategy). Off by default: every
    /// denominator must have been cleared.
    pub allow_division: bool,
}

impl Default for EmitOptions {
    fn default() -> Self {
        EmitOptions {
            logic: "QF_NRA".to_string(),
            produce_models: false,
            header: Vec::new(),
            allow_division: false,
        }
    }
}

/// Serializes the formula as a complete `(check-sat)` script.
pub fn emit_script(f: &Formula, opts: &EmitOptions) -> Result<String> {
    let vars = f.vars();
    for v in &vars {
        if let Some(d) = symbols::parse_radical_var(v) {
            return Err(Error::UnencodedRadical(d));
        }
    }
    if !opts.allow_division {
        for a in f.atoms() {
            if !a.lhs.is_polynomial() {
                return Err(Error::UnsupportedConstruct(format!(
                    "division in `{a}` is only emitted under the guard strategy"
                )));
            }
        }
    }

    let mut out = String::new();
    for line in &opts.header {
        out.push_str("; ");
        out.push_str(line);
        out.push('\n');
    }
    if opts.produce_models {
        out.push_str("(set-option :produce-models true)\n");
    }
    out.push_str(&format!("(set-logic {})\n", opts.logic));
    for v in &vars {
        out.push_str(&format!("(declare-const {v} Real)\n"));
    }
    for conjunct in f.conjuncts() {
        out.push_str(&format!("(assert {})\n", formula_term(conjunct)));
    }
    out.push_str("(check-sat)\n");
    if opts.produce_models {
        out.push_str("(get-model)\n");
    }
    Ok(out)
}

fn formula_term(f: &Formula) -> String {
    match f {
        Formula::True => "true".to_string(),
        Formula::False => "false".to_string(),
        Formula::Atom(a) => atom_term(&a.lhs, a.op),
        Formula::Not(g) => format!("(not {})", formula_term(g)),
        Formula::And(cs) => nary("and", cs),
        Formula::Or(cs) => nary("or", cs),
    }
}

fn nary(op: &str, children: &[Formula]) -> String {
    let parts: Vec<String> = children.iter().map(formula_term).collect();
    format!("({op} {})", parts.join(" "))
}

fn atom_term(lhs: &RationalFunction, op: RelOp) -> String {
    let value = if lhs.is_polynomial() {
        poly_term(lhs.num())
    } else {
        format!("(/ {} {})", poly_term(lhs.num()), poly_term(lhs.den()))
    };
    match op {
        RelOp::Ne => format!("(not (= {value} 0))"),
        other => format!("({} {value} 0)", other.symbol()),
    }
}

/// Renders a polynomial as `(- positives negatives)` with the terms of
/// each group in descending graded-lex order, so leading terms come first.
fn poly_term(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (m, c) in p.terms().rev() {
        if c.is_negative() {
            neg.push(term(m, &-c.clone()));
        } else {
            pos.push(term(m, c));
        }
    }
    let group = |parts: Vec<String>| -> String {
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("(+ {})", parts.join(" "))
        }
    };
    match (pos.is_empty(), neg.is_empty()) {
        (false, true) => group(pos),
        (true, false) => format!("(- {})", group(neg)),
        (false, false) => format!("(- {} {})", group(pos), group(neg)),
        (true, true) => unreachable!("nonzero polynomial has terms"),
    }
}

/// One term with a non-negative coefficient; powers become repeated
/// factors.
fn term(m: &Monomial, c: &Rational) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !c.is_one() || m.is_one() {
        factors.push(rational_term(c));
    }
    for (v, e) in m.powers() {
        for _ in 0..e {
            factors.push(v.as_str().to_string());
        }
    }
    if factors.len() == 1 {
        factors.into_iter().next().unwrap()
    } else {
        format!("(* {})", factors.join(" "))
    }
}

fn rational_term(c: &Rational) -> String {
    let body = if c.denom().is_one() {
        format!("{}", c.numer().abs())
    } else {
        format!("(/ {} {})", c.numer().abs(), c.denom())
    };
    if c.is_negative() {
        format!("(- {body})")
    } else {
        body
    }
}
