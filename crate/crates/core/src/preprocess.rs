//! Rewriting of rational atoms into polynomial QF_NRA form.
//!
//! Three semantics-preserving treatments of a denominator are supported:
//! keep the division and assert the denominator nonzero (`guard`),
//! multiply through by the denominator (`bdc`), or case-split on its sign
//! (`ddc`). Equations and inequations always simplify to
//! `f σ 0 ∧ g ≠ 0` independent of the strategy. All three make an atom
//! false at the zeros of its denominator, so the strategies agree
//! pointwise everywhere.
//!
//! Square roots of positive integers are compiled away by introducing one
//! fresh variable per radicand `d`, constrained by `y^2 = d ∧ y > 0`;
//! optionally every polynomial is reduced modulo `y^2 - d` so only linear
//! powers of `y` remain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, RationalFunction, Var};
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, RelOp};
use crate::symbols;
use crate::Rational;

/// Denominator-clearing strategy.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Keep division, add `g != 0`.
    Guard,
    /// Basic clearance: `f*g σ 0 ∧ g != 0`.
    Bdc,
    /// Disjunctive clearance: case split on the sign of `g`.
    Ddc,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Guard, Strategy::Bdc, Strategy::Ddc];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Guard => "guard",
            Strategy::Bdc => "bdc",
            Strategy::Ddc => "ddc",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "guard" => Ok(Strategy::Guard),
            "bdc" => Ok(Strategy::Bdc),
            "ddc" => Ok(Strategy::Ddc),
            other => Err(Error::UnsupportedConstruct(format!(
                "unknown strategy `{other}` (expected guard, bdc or ddc)"
            ))),
        }
    }
}

/// An atom split into coprime numerator and denominator, `f/g σ 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClearedAtom {
    pub f: Polynomial,
    pub g: Polynomial,
    pub op: RelOp,
}

impl ClearedAtom {
    pub fn from_atom(a: &Atom) -> Self {
        ClearedAtom {
            f: a.lhs.num().clone(),
            g: a.lhs.den().clone(),
            op: a.op,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.g.is_one()
    }

    fn bare(&self) -> Formula {
        Formula::atom(RationalFunction::from_polynomial(self.f.clone()), self.op)
    }
}

/// Moves everything to the left-hand side: `lhs σ rhs` becomes
/// `(lhs - rhs) σ 0` in lowest terms.
pub fn normalize_atom(lhs: &RationalFunction, op: RelOp, rhs: &RationalFunction) -> ClearedAtom {
    let diff = lhs.sub(rhs);
    ClearedAtom {
        f: diff.num().clone(),
        g: diff.den().clone(),
        op,
    }
}

/// Basic denominator clearance: `f*g σ 0 ∧ g != 0`.
pub fn clear_bdc(a: &ClearedAtom) -> Formula {
    if a.is_polynomial() {
        return a.bare();
    }
    Formula::and([
        Formula::atom(RationalFunction::from_polynomial(&a.f * &a.g), a.op),
        Formula::atom(RationalFunction::from_polynomial(a.g.clone()), RelOp::Ne),
    ])
}

/// Disjunctive denominator clearance: sign split on `g` with the relation
/// reversed in the negative branch.
pub fn clear_ddc(a: &ClearedAtom) -> Formula {
    if a.is_polynomial() {
        return a.bare();
    }
    let g = |op| Formula::atom(RationalFunction::from_polynomial(a.g.clone()), op);
    let f = |op| Formula::atom(RationalFunction::from_polynomial(a.f.clone()), op);
    Formula::or([
        Formula::and([g(RelOp::Gt), f(a.op)]),
        Formula::and([g(RelOp::Lt), f(a.op.reversed())]),
    ])
}

/// Equations and inequations: `f σ 0 ∧ g != 0`.
pub fn clear_equality(a: &ClearedAtom) -> Formula {
    if a.is_polynomial() {
        return a.bare();
    }
    Formula::and([
        a.bare(),
        Formula::atom(RationalFunction::from_polynomial(a.g.clone()), RelOp::Ne),
    ])
}

/// Keeps the atom in division form and guards the denominator.
pub fn clear_guard(a: &ClearedAtom) -> Formula {
    if a.is_polynomial() {
        return a.bare();
    }
    let rf = RationalFunction::new(a.f.clone(), a.g.clone())
        .expect("cleared atoms have nonzero denominators");
    Formula::and([
        Formula::atom(rf, a.op),
        Formula::atom(RationalFunction::from_polynomial(a.g.clone()), RelOp::Ne),
    ])
}

/// Rewrites every rational atom of the formula in place under the chosen
/// strategy; polynomial atoms pass through untouched, equalities always
/// use the equality rule.
pub fn apply_strategy(f: &Formula, s: Strategy) -> Formula {
    f.map_atoms(&mut |a| {
        if a.lhs.is_polynomial() {
            return Ok(Formula::Atom(a.clone()));
        }
        let ca = ClearedAtom::from_atom(a);
        Ok(match (a.op, s) {
            (RelOp::Eq | RelOp::Ne, _) => clear_equality(&ca),
            (_, Strategy::Guard) => clear_guard(&ca),
            (_, Strategy::Bdc) => clear_bdc(&ca),
            (_, Strategy::Ddc) => clear_ddc(&ca),
        })
    })
    .expect("strategy rewriting is infallible")
}

/// One radical extension `y^2 = d ∧ y > 0` introduced by the encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalExtension {
    pub var: Var,
    pub radicand: u64,
}

/// Replaces every `sqrt(d)` pseudo-variable by a fresh variable `y_d`
/// constrained by `y_d^2 = d ∧ y_d > 0`. With `reduce` set, every
/// polynomial of the result is reduced modulo `y_d^2 - d` so the degree
/// in `y_d` stays at most 1 (the defining clauses aside).
pub fn encode_algebraic(f: &Formula, reduce: bool) -> Result<Formula> {
    Ok(encode_algebraic_with_info(f, reduce)?.0)
}

/// Like [`encode_algebraic`], also reporting the introduced extensions.
pub fn encode_algebraic_with_info(
    f: &Formula,
    reduce: bool,
) -> Result<(Formula, Vec<RadicalExtension>)> {
    let vars = f.vars();
    let radicals: BTreeSet<u64> = vars
        .iter()
        .filter_map(symbols::parse_radical_var)
        .collect();
    if radicals.is_empty() {
        return Ok((f.clone(), Vec::new()));
    }

    let mut rename: BTreeMap<Var, Var> = BTreeMap::new();
    let mut extensions = Vec::new();
    for &d in &radicals {
        if d == 0 {
            return Err(Error::InvalidRadicand(0));
        }
        let mut name = format!("y{d}");
        while vars.contains(name.as_str()) {
            name.push('_');
        }
        let y = Var::new(&name);
        rename.insert(symbols::radical_var(d), y.clone());
        extensions.push(RadicalExtension { var: y, radicand: d });
    }

    let encoded = f.map_atoms(&mut |a| {
        let mut lhs = a.lhs.rename_vars(&rename);
        if reduce {
            for ext in &extensions {
                lhs = lhs.reduce_mod_quadratic(&ext.var, ext.radicand)?;
            }
        }
        Ok(Formula::atom(lhs, a.op))
    })?;

    let mut clauses = Vec::with_capacity(extensions.len() * 2 + 1);
    clauses.push(encoded);
    for ext in &extensions {
        let y = Polynomial::variable(ext.var.clone());
        let defining =
            &y.pow(2) - &Polynomial::constant(Rational::from(num_bigint::BigInt::from(ext.radicand)));
        clauses.push(Formula::atom(
            RationalFunction::from_polynomial(defining),
            RelOp::Eq,
        ));
        clauses.push(Formula::atom(
            RationalFunction::from_polynomial(y),
            RelOp::Gt,
        ));
    }
    Ok((Formula::and(clauses), extensions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_expr, parse_relation, parse_relation_atom};

    fn cleared(src: &str) -> ClearedAtom {
        let (lhs, op, rhs) = parse_relation(src).unwrap();
        normalize_atom(&lhs, op, &rhs)
    }

    fn atom(src: &str) -> Formula {
        parse_relation_atom(src).unwrap()
    }

    #[test]
    fn normalize_atom_examples() {
        let a = cleared("1/x >= 1");
        assert_eq!(a.f, parse_expr("1 - x").unwrap().num().clone());
        assert_eq!(a.g, parse_expr("x").unwrap().num().clone());
        assert_eq!(a.op, RelOp::Ge);

        let b = cleared("x > 0");
        assert!(b.is_polynomial());

        // P/Q σ F/G reduces to (PG - FQ)/(QG) in lowest terms
        let c = cleared("(x+1)/(x-1) > x/(x+2)");
        let expected = parse_expr("(x+1)/(x-1) - x/(x+2)").unwrap();
        assert_eq!(&c.f, expected.num());
        assert_eq!(&c.g, expected.den());
    }

    #[test]
    fn bdc_examples() {
        let f = clear_bdc(&cleared("1/x >= 1"));
        assert_eq!(
            f,
            Formula::and([atom("(1 - x) * x >= 0"), atom("x != 0")])
        );
        assert_eq!(clear_bdc(&cleared("x > 0")), atom("x > 0"));
    }

    #[test]
    fn ddc_examples() {
        let f = clear_ddc(&cleared("1/x >= 1"));
        // the negative branch carries the reversed relation 0 >= 1 - x,
        // i.e. 1 - x <= 0 in lhs-form
        let expected = Formula::or([
            Formula::and([atom("x > 0"), atom("1 - x >= 0")]),
            Formula::and([atom("x < 0"), atom("1 - x <= 0")]),
        ]);
        assert_eq!(f, expected);
        assert_eq!(clear_ddc(&cleared("x > 0")), atom("x > 0"));
    }

    #[test]
    fn ddc_with_constant_numerator_folds_to_the_sign_condition() {
        assert_eq!(clear_ddc(&cleared("1/x > 0")), atom("x > 0"));
    }

    #[test]
    fn equality_examples() {
        let f = clear_equality(&cleared("(x-1)/x = 0"));
        assert_eq!(f, Formula::and([atom("x - 1 = 0"), atom("x != 0")]));
        // a vanishing numerator leaves only the denominator guard
        let z = clear_equality(&ClearedAtom {
            f: Polynomial::zero(),
            g: parse_expr("x").unwrap().num().clone(),
            op: RelOp::Eq,
        });
        assert_eq!(z, atom("x != 0"));
    }

    #[test]
    fn guard_examples() {
        let f = clear_guard(&cleared("1/x >= 1"));
        assert_eq!(f, Formula::and([atom("(1-x)/x >= 0"), atom("x != 0")]));
        assert_eq!(clear_guard(&cleared("x > 0")), atom("x > 0"));
    }

    #[test]
    fn strategies_are_false_at_denominator_zeros() {
        use crate::formula::Truth;
        let a = cleared("1/x >= 1");
        let origin = [(Var::new("x"), Rational::from(num_bigint::BigInt::from(0)))].into();
        assert_eq!(clear_bdc(&a).eval(&origin).unwrap(), Truth::False);
        assert_eq!(clear_ddc(&a).eval(&origin).unwrap(), Truth::False);
    }

    #[test]
    fn apply_strategy_rewrites_in_place() {
        let f = Formula::and([atom("Y/x > 0"), atom("(Z + 1)/x >= 2"), atom("Z > 0")]);
        let d = apply_strategy(&f, Strategy::Ddc);
        // two rational atoms each become one binary disjunction; the
        // polynomial atom is untouched; no global expansion
        let Formula::And(cs) = &d else {
            panic!("expected conjunction")
        };
        assert_eq!(cs.len(), 3);
        let n_disjunctions = cs
            .iter()
            .filter(|c| matches!(c, Formula::Or(branches) if branches.len() == 2))
            .count();
        assert_eq!(n_disjunctions, 2);
        assert!(cs.contains(&atom("Z > 0")));

        let poly = Formula::and([atom("x > 0"), atom("y = 1")]);
        assert_eq!(apply_strategy(&poly, Strategy::Bdc), poly);
    }

    #[test]
    fn equalities_use_equality_rule_under_every_strategy() {
        let f = atom("1/x = 1");
        for s in Strategy::ALL {
            let cleared = apply_strategy(&f, s);
            assert_eq!(
                cleared,
                Formula::and([atom("1 - x = 0"), atom("x != 0")]),
                "{s}"
            );
        }
    }

    #[test]
    fn encode_sqrt5() {
        let f = atom("sqrt(5) * G >= 1");
        let (encoded, exts) = encode_algebraic_with_info(&f, true).unwrap();
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].radicand, 5);
        let y = &exts[0].var;
        assert_eq!(y.as_str(), "y5");
        let expected = Formula::and([
            atom("y5 * G >= 1"),
            atom("y5^2 = 5"),
            atom("y5 > 0"),
        ]);
        assert_eq!(encoded, expected);
        assert!(!encoded.vars().contains(&symbols::radical_var(5)));
    }

    #[test]
    fn encode_two_radicals() {
        let f = atom("sqrt(2) + sqrt(5) > 3");
        let (encoded, exts) = encode_algebraic_with_info(&f, true).unwrap();
        assert_eq!(exts.len(), 2);
        let atoms = encoded.atoms().len();
        assert_eq!(atoms, 5); // the claim + two clause pairs
    }

    #[test]
    fn encode_without_radicals_is_identity() {
        let f = Formula::and([atom("x > 0"), atom("1/x > 0")]);
        assert_eq!(encode_algebraic(&f, true).unwrap(), f);
    }

    #[test]
    fn encode_reduces_radical_powers() {
        let f = atom("sqrt(5)^4 + sqrt(5)^3 + G > 0");
        let encoded = encode_algebraic(&f, true).unwrap();
        let y = Var::new("y5");
        for a in encoded.atoms() {
            if a.lhs.vars().contains(&y) && a.op != RelOp::Eq {
                assert!(a.lhs.num().degree_in(&y).unwrap_or(0) <= 1);
            }
        }
        assert_eq!(
            encoded,
            Formula::and([atom("25 + 5*y5 + G > 0"), atom("y5^2 = 5"), atom("y5 > 0")])
        );

        let unreduced = encode_algebraic(&f, false).unwrap();
        assert_eq!(
            unreduced,
            Formula::and([
                atom("y5^4 + y5^3 + G > 0"),
                atom("y5^2 = 5"),
                atom("y5 > 0")
            ])
        );
    }
}
