//! Relational atoms and boolean formulas over rational functions.
//!
//! An atom is `lhs σ 0` with a canonical rational function on the left, so
//! structural equality coincides with syntactic identity of the canonical
//! forms. The smart constructors keep formulas normalized: `and`/`or`
//! flatten nested connectives, drop units, sort children by the structural
//! order and deduplicate; constant atoms fold to `True`/`False`; negation
//! is pushed to the atoms immediately (atoms are closed under complement,
//! so normalized formulas never contain `Not`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{RationalFunction, RfValue, Var};
use crate::error::{Error, Result};
use crate::symbols;
use crate::Rational;

use num_traits::Zero;

/// Relation symbol of an atom `lhs σ 0`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RelOp {
    Gt,
    Lt,
    Ge,
    Le,
    Eq,
    Ne,
}

impl RelOp {
    /// Logical complement: `¬(p > 0)` is `p ≤ 0`, and so on.
    pub fn complement(self) -> RelOp {
        match self {
            RelOp::Gt => RelOp::Le,
            RelOp::Le => RelOp::Gt,
            RelOp::Lt => RelOp::Ge,
            RelOp::Ge => RelOp::Lt,
            RelOp::Eq => RelOp::Ne,
            RelOp::Ne => RelOp::Eq,
        }
    }

    /// Side swap: `0 σ p` is `p σ.reversed() 0`.
    pub fn reversed(self) -> RelOp {
        match self {
            RelOp::Gt => RelOp::Lt,
            RelOp::Lt => RelOp::Gt,
            RelOp::Ge => RelOp::Le,
            RelOp::Le => RelOp::Ge,
            RelOp::Eq => RelOp::Eq,
            RelOp::Ne => RelOp::Ne,
        }
    }

    /// Truth of `v σ 0`.
    pub fn holds(self, v: &Rational) -> bool {
        match self {
            RelOp::Gt => *v > Rational::zero(),
            RelOp::Lt => *v < Rational::zero(),
            RelOp::Ge => *v >= Rational::zero(),
            RelOp::Le => *v <= Rational::zero(),
            RelOp::Eq => v.is_zero(),
            RelOp::Ne => !v.is_zero(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Gt => ">",
            RelOp::Lt => "<",
            RelOp::Ge => ">=",
            RelOp::Le => "<=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A relational atom `lhs σ 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub lhs: RationalFunction,
    pub op: RelOp,
}

impl Atom {
    pub fn new(lhs: RationalFunction, op: RelOp) -> Self {
        Atom { lhs, op }
    }

    pub fn complement(&self) -> Atom {
        Atom::new(self.lhs.clone(), self.op.complement())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.lhs, self.op)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Three-valued truth; `Undefined` marks evaluation at a pole.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Truth {
    True,
    False,
    Undefined,
}

impl Truth {
    pub fn negate(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Undefined => Truth::Undefined,
        }
    }

    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

/// Boolean formula in negation normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    /// Builds an atom, folding constant left-hand sides to `True`/`False`.
    pub fn atom(lhs: RationalFunction, op: RelOp) -> Formula {
        match lhs.constant_value() {
            Some(c) => {
                if op.holds(&c) {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            None => Formula::Atom(Atom::new(lhs, op)),
        }
    }

    /// N-ary conjunction: flattens, drops `True`, collapses on `False`,
    /// sorts and deduplicates children.
    pub fn and(children: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for c in children {
            match c {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// N-ary disjunction, dual to [`Formula::and`].
    pub fn or(children: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for c in children {
            match c {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn not(f: Formula) -> Formula {
        f.negate()
    }

    /// Logical complement with the negation pushed down to atoms.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Atom(a) => Formula::Atom(a.complement()),
            Formula::Not(f) => f.normalize(),
            Formula::And(cs) => Formula::or(cs.iter().map(|c| c.negate())),
            Formula::Or(cs) => Formula::and(cs.iter().map(|c| c.negate())),
        }
    }

    /// Re-normalizes a tree that may contain `Not` nodes or unsorted
    /// connectives (the smart constructors already keep everything built
    /// through them normalized).
    pub fn normalize(&self) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::atom(a.lhs.clone(), a.op),
            Formula::Not(f) => f.negate(),
            Formula::And(cs) => Formula::and(cs.iter().map(|c| c.normalize())),
            Formula::Or(cs) => Formula::or(cs.iter().map(|c| c.normalize())),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| out.extend(a.lhs.vars()));
        out
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(g) => g.visit_atoms(f),
            Formula::And(cs) | Formula::Or(cs) => {
                for c in cs {
                    c.visit_atoms(f);
                }
            }
        }
    }

    /// Rebuilds the formula with every atom transformed.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Result<Formula>) -> Result<Formula> {
        Ok(match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => f(a)?,
            Formula::Not(g) => Formula::not(g.map_atoms(f)?),
            Formula::And(cs) => Formula::and(
                cs.iter()
                    .map(|c| c.map_atoms(f))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Formula::Or(cs) => Formula::or(
                cs.iter()
                    .map(|c| c.map_atoms(f))
                    .collect::<Result<Vec<_>>>()?,
            ),
        })
    }

    /// Simultaneous substitution of variables by expressions.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Formula> {
        self.map_atoms(&mut |a| Ok(Formula::atom(a.lhs.subst(bindings)?, a.op)))
    }

    /// Three-valued evaluation; strict in `Undefined`: a pole anywhere in
    /// a connective makes the connective undefined.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Truth> {
        Ok(match self {
            Formula::True => Truth::True,
            Formula::False => Truth::False,
            Formula::Atom(a) => match a.lhs.eval(point)? {
                RfValue::Pole => Truth::Undefined,
                RfValue::Finite(v) => Truth::from_bool(a.op.holds(&v)),
            },
            Formula::Not(f) => f.eval(point)?.negate(),
            Formula::And(cs) => {
                let mut acc = Truth::True;
                for c in cs {
                    match c.eval(point)? {
                        Truth::Undefined => return Ok(Truth::Undefined),
                        Truth::False => acc = Truth::False,
                        Truth::True => {}
                    }
                }
                acc
            }
            Formula::Or(cs) => {
                let mut acc = Truth::False;
                for c in cs {
                    match c.eval(point)? {
                        Truth::Undefined => return Ok(Truth::Undefined),
                        Truth::True => acc = Truth::True,
                        Truth::False => {}
                    }
                }
                acc
            }
        })
    }

    /// Top-level conjuncts; the identity view for non-conjunctions.
    pub fn conjuncts(&self) -> &[Formula] {
        match self {
            Formula::And(cs) => cs,
            other => std::slice::from_ref(other),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| format!("({c})")).collect();
                f.write_str(&parts.join(" & "))
            }
            Formula::Or(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| format!("({c})")).collect();
                f.write_str(&parts.join(" | "))
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recurrence step of one sequence variable. The expression may reference
/// sequence variables (their pre-shift values), the free term `x`, and the
/// token `s(x)` for the next free term.
#[derive(Clone, Debug)]
pub struct ShiftRule {
    pub seq_var: Var,
    pub step: RationalFunction,
}

/// The single-step shift substitution for a problem.
///
/// One application maps a sequence variable to its rule (with `s(x)`
/// becoming the fresh variable `x_s1`), the free term `x` to `x_s1`, and
/// each `x_si` to `x_s(i+1)`; radical pseudo-variables are constants.
#[derive(Clone, Debug, Default)]
pub struct ShiftMap {
    images: BTreeMap<Var, RationalFunction>,
}

impl ShiftMap {
    pub fn new(rules: &[ShiftRule]) -> Self {
        let rename: BTreeMap<Var, Var> =
            [(symbols::shifted_free_term(), symbols::shift_var(1))].into();
        let images = rules
            .iter()
            .map(|r| (r.seq_var.clone(), r.step.rename_vars(&rename)))
            .collect();
        ShiftMap { images }
    }

    pub fn has_rule(&self, v: &Var) -> bool {
        self.images.contains_key(v)
    }

    /// The substitution image of one variable, or an error for a variable
    /// that cannot be shifted.
    fn image(&self, v: &Var) -> Result<Option<RationalFunction>> {
        if let Some(img) = self.images.get(v) {
            return Ok(Some(img.clone()));
        }
        if v.as_str() == symbols::FREE_TERM {
            return Ok(Some(RationalFunction::variable(symbols::shift_var(1))));
        }
        if let Some(i) = symbols::parse_shift_var(v) {
            return Ok(Some(RationalFunction::variable(symbols::shift_var(i + 1))));
        }
        if symbols::parse_radical_var(v).is_some() {
            return Ok(None); // radical constants are shift-invariant
        }
        Err(Error::MissingShiftRule(v.as_str().to_string()))
    }

    fn bindings_for(&self, vars: &BTreeSet<Var>) -> Result<BTreeMap<Var, RationalFunction>> {
        let mut map = BTreeMap::new();
        for v in vars {
            if let Some(img) = self.image(v)? {
                map.insert(v.clone(), img);
            }
        }
        Ok(map)
    }

    pub fn shift_formula(&self, f: &Formula, k: u32) -> Result<Formula> {
        let mut cur = f.clone();
        for _ in 0..k {
            let bindings = self.bindings_for(&cur.vars())?;
            cur = cur.substitute(&bindings)?;
        }
        Ok(cur)
    }

    pub fn shift_expr(&self, e: &RationalFunction, k: u32) -> Result<RationalFunction> {
        let mut cur = e.clone();
        for _ in 0..k {
            let bindings = self.bindings_for(&cur.vars())?;
            cur = cur.subst(&bindings)?;
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_expr, parse_relation_atom};

    fn atom(src: &str) -> Formula {
        parse_relation_atom(src).unwrap()
    }

    fn product_rules() -> ShiftMap {
        let rule = |name: &str, step: &str| ShiftRule {
            seq_var: Var::new(name),
            step: parse_expr(step).unwrap(),
        };
        ShiftMap::new(&[
            rule("X", "X + 1"),
            rule("Y", "Y + s(x)"),
            rule("Z", "Z * s(x)"),
        ])
    }

    fn point(pairs: &[(&str, i64)]) -> BTreeMap<Var, Rational> {
        pairs
            .iter()
            .map(|(n, v)| (Var::new(n), Rational::from(num_bigint::BigInt::from(*v))))
            .collect()
    }

    #[test]
    fn negate_examples() {
        assert_eq!(atom("Z <= 1").negate(), atom("Z > 1"));
        assert_eq!(atom("f = 0").negate(), atom("f != 0"));
        let a = atom("Z <= 1");
        assert_eq!(Formula::not(Formula::not(a.clone())), a);
    }

    #[test]
    fn negate_is_involution_on_connectives() {
        let f = Formula::and([atom("x > 0"), Formula::or([atom("y < 0"), atom("z = 0")])]);
        assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn shift_examples() {
        let rules = product_rules();
        assert_eq!(
            rules.shift_formula(&atom("X = Y"), 1).unwrap(),
            atom("X + 1 = Y + x_s1")
        );
        assert_eq!(
            rules.shift_formula(&atom("Z <= 1"), 1).unwrap(),
            atom("Z * x_s1 <= 1")
        );
        let e = parse_expr("Z + x").unwrap();
        assert_eq!(rules.shift_expr(&e, 0).unwrap(), e);
        assert_eq!(
            rules.shift_formula(&atom("Z <= 1"), 2).unwrap(),
            atom("Z * x_s1 * x_s2 <= 1")
        );
    }

    #[test]
    fn shift_missing_rule_is_reported() {
        let rules = product_rules();
        let err = rules.shift_formula(&atom("W > 0"), 1).unwrap_err();
        assert!(matches!(err, Error::MissingShiftRule(v) if v == "W"));
    }

    #[test]
    fn shift_composes() {
        let rules = product_rules();
        let f = atom("Z + Y <= X * x");
        for a in 0..=3u32 {
            for b in 0..=2u32 {
                let two_step = rules
                    .shift_formula(&rules.shift_formula(&f, a).unwrap(), b)
                    .unwrap();
                let one_step = rules.shift_formula(&f, a + b).unwrap();
                assert_eq!(two_step, one_step, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn substitute_examples() {
        let z_to_x1: BTreeMap<Var, RationalFunction> =
            [(Var::new("Z"), parse_expr("x1").unwrap())].into();
        assert_eq!(
            atom("Z <= 1").substitute(&z_to_x1).unwrap(),
            atom("x1 <= 1")
        );
        let both: BTreeMap<Var, RationalFunction> = [
            (Var::new("X"), parse_expr("1").unwrap()),
            (Var::new("Y"), parse_expr("x1").unwrap()),
        ]
        .into();
        assert_eq!(atom("X = Y").substitute(&both).unwrap(), atom("1 = x1"));
        assert_eq!(
            atom("X = Y").substitute(&BTreeMap::new()).unwrap(),
            atom("X = Y")
        );
    }

    #[test]
    fn eval_examples() {
        let f = Formula::and([atom("x > 0"), atom("1/x > 0")]);
        assert_eq!(f.eval(&point(&[("x", 2)])).unwrap(), Truth::True);
        assert_eq!(
            atom("1/x > 0").eval(&point(&[("x", 0)])).unwrap(),
            Truth::Undefined
        );
        // the depth-1 refutation conjunction of the product problem at the
        // all-ones point: the last clause Z*x_s1 > 1 fails
        let lf = Formula::and([
            atom("x > 0"),
            atom("x_s1 > 0"),
            atom("X = Y"),
            atom("X + 1 = Y + x_s1"),
            atom("Z <= 1"),
            atom("Z * x_s1 > 1"),
        ]);
        let pt = point(&[("x", 1), ("x_s1", 1), ("X", 1), ("Y", 1), ("Z", 1)]);
        assert_eq!(lf.eval(&pt).unwrap(), Truth::False);
    }

    #[test]
    fn eval_of_negation_flips_defined_values() {
        let f = Formula::or([atom("x > 1"), atom("1/x >= 1")]);
        for v in [-2i64, 1, 2, 5] {
            let pt = point(&[("x", v)]);
            let t = f.eval(&pt).unwrap();
            if t != Truth::Undefined {
                assert_eq!(f.negate().eval(&pt).unwrap(), t.negate());
            }
        }
    }

    #[test]
    fn constant_atoms_fold() {
        assert_eq!(atom("1 > 0"), Formula::True);
        assert_eq!(atom("0 = 0"), Formula::True);
        assert_eq!(atom("2 <= 1"), Formula::False);
        assert_eq!(
            Formula::and([Formula::True, atom("x > 0")]),
            atom("x > 0")
        );
        assert_eq!(
            Formula::and([Formula::False, atom("x > 0")]),
            Formula::False
        );
    }
}
