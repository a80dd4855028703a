//! Seeded random generators for polynomials, rational functions, cleared
//! atoms and evaluation points. Test-only machinery (also exported under
//! the `testgen` feature for the acceptance suite); not part of the
//! library proper.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{Monomial, Polynomial, RationalFunction, Var};
use crate::formula::RelOp;
use crate::preprocess::ClearedAtom;
use crate::Rational;

pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    Rational::new(num.into(), den.into())
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random polynomial over the given variables with per-variable degree at
/// most `max_deg` and at most `max_terms` monomials. May be zero.
pub fn polynomial(
    rng: &mut impl Rng,
    vars: &[Var],
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let n_terms = rng.gen_range(0..=max_terms);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let mono = Monomial::from_powers(
            vars.iter()
                .map(|v| (v.clone(), rng.gen_range(0..=max_deg))),
        );
        terms.push((mono, rational(rng)));
    }
    Polynomial::from_terms(terms)
}

pub fn nonzero_polynomial(
    rng: &mut impl Rng,
    vars: &[Var],
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let p = polynomial(rng, vars, max_deg, max_terms.max(1));
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rational_function(rng: &mut impl Rng, vars: &[Var], max_deg: u32) -> RationalFunction {
    let num = polynomial(rng, vars, max_deg, 4);
    let den = nonzero_polynomial(rng, vars, max_deg, 3);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

pub fn rel_op(rng: &mut impl Rng) -> RelOp {
    [RelOp::Gt, RelOp::Lt, RelOp::Ge, RelOp::Le, RelOp::Eq, RelOp::Ne][rng.gen_range(0..6)]
}

pub fn inequality_op(rng: &mut impl Rng) -> RelOp {
    [RelOp::Gt, RelOp::Lt, RelOp::Ge, RelOp::Le][rng.gen_range(0..4)]
}

/// A random cleared atom `f/g σ 0` in lowest terms.
pub fn cleared_atom(rng: &mut impl Rng, vars: &[Var], max_deg: u32, op: RelOp) -> ClearedAtom {
    let rf = rational_function(rng, vars, max_deg);
    ClearedAtom {
        f: rf.num().clone(),
        g: rf.den().clone(),
        op,
    }
}

/// A total assignment for the given variables.
pub fn point(rng: &mut impl Rng, vars: &[Var]) -> BTreeMap<Var, Rational> {
    vars.iter()
        .map(|v| (v.clone(), rational(rng)))
        .collect()
}

pub fn var_set(n: usize) -> Vec<Var> {
    ["u", "v", "w", "p", "q"][..n]
        .iter()
        .map(|s| Var::new(s))
        .collect()
}

/// f64 evaluation of a polynomial, for checks against irrational
/// assignments (square roots).
pub fn eval_f64(p: &Polynomial, point: &BTreeMap<Var, f64>) -> f64 {
    let mut acc = 0.0;
    for (m, c) in p.terms() {
        let mut term = rational_to_f64(c);
        for (v, e) in m.powers() {
            term *= point[v].powi(e as i32);
        }
        acc += term;
    }
    acc
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let num: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}
