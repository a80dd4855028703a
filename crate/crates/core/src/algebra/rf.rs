//! Rational functions in canonical form.
//!
//! A value is kept as `num/den` with `gcd(num, den) = 1`. When the
//! denominator is constant it is folded away entirely (`den = 1`, the
//! numerator may then carry rational coefficients); otherwise the pair is
//! scaled so both parts have integer coefficients with no common integer
//! factor and the denominator's leading coefficient is positive. Equal
//! values therefore have identical representations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::poly::{Polynomial, Var};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Result of evaluating a rational function at a point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RfValue {
    Finite(Rational),
    Pole,
}

impl RfValue {
    pub fn finite(self) -> Option<Rational> {
        match self {
            RfValue::Finite(v) => Some(v),
            RfValue::Pole => None,
        }
    }
}

impl RationalFunction {
    /// Builds the canonical form of `num/den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");

        if let Some(c) = den.constant_value() {
            num = num.scale(&(Rational::one() / c));
            den = Polynomial::one();
        } else {
            let (cn, n) = num.primitive_scale();
            let (cd, d) = den.primitive_scale();
            let ratio = cn / cd;
            num = n.scale(&Rational::from(ratio.numer().clone()));
            den = d.scale(&Rational::from(ratio.denom().clone()));
            if den
                .leading_coefficient()
                .map_or(false, |lc| lc.is_negative())
            {
                num = -&num;
                den = -&den;
            }
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::from_polynomial(Polynomial::from_int(n))
    }

    pub fn variable(v: Var) -> Self {
        RationalFunction::from_polynomial(Polynomial::variable(v))
    }

    pub fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_polynomial(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1 and the value is an ordinary polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction::new(num, den).expect("product of nonzero denominators is nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators is nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
            .expect("divisor numerator is nonzero"))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RationalFunction::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact value at a rational point, or `Pole` where the denominator
    /// vanishes.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<RfValue> {
        let d = self.den.eval(point)?;
        let n = self.num.eval(point)?;
        if d.is_zero() {
            Ok(RfValue::Pole)
        } else {
            Ok(RfValue::Finite(n / d))
        }
    }

    pub fn rename_vars(&self, map: &BTreeMap<Var, Var>) -> Self {
        RationalFunction::new(self.num.rename_vars(map), self.den.rename_vars(map))
            .expect("renaming preserves nonzero denominators")
    }

    /// Simultaneous substitution of variables by rational functions;
    /// unmapped variables stay themselves. Fails when a denominator
    /// becomes identically zero.
    pub fn subst(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Self> {
        let num = subst_poly(&self.num, bindings);
        let den = subst_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(num.div(&den).expect("checked nonzero"))
    }

    /// Applies `reduce_mod_quadratic` to numerator and denominator; only
    /// meaningful under the side constraint `y^2 = d`.
    pub fn reduce_mod_quadratic(&self, y: &Var, d: u64) -> Result<Self> {
        RationalFunction::new(
            self.num.reduce_mod_quadratic(y, d),
            self.den.reduce_mod_quadratic(y, d),
        )
    }
}

/// Evaluates a polynomial with rational-function values for its variables.
pub fn subst_poly(p: &Polynomial, bindings: &BTreeMap<Var, RationalFunction>) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(c.clone());
        for (v, e) in m.powers() {
            let val = match bindings.get(v) {
                Some(rf) => rf.clone(),
                None => RationalFunction::variable(v.clone()),
            };
            term = term.mul(&val.pow(e));
        }
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        let den = if self.den.num_terms() > 1 {
            format!("({})", self.den)
        } else {
            format!("{}", self.den)
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
