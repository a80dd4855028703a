//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a map from power product to nonzero coefficient and
//! monomials are ordered graded-lexicographically (variables compared by
//! name), so every polynomial has a single canonical representation and a
//! well-defined leading term.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Writes `Debug` through `Display`; keeps test failure output readable.
macro_rules! fmt_debug_as_display {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt::Display::fmt(self, f)
        }
    };
}

/// An interned variable name; cheap to clone, ordered by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fmt_debug_as_display!();
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl Borrow<str> for Var {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// A power product of variables; exponents are strictly positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::from_powers([(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial { powers: map }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.powers.values().sum()
    }

    pub fn degree_of(&self, v: &Var) -> u32 {
        self.powers.get(v).copied().unwrap_or(0)
    }

    pub fn powers(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.powers.iter().map(|(v, &e)| (v, e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.powers.keys()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = self.powers.clone();
        for (v, &e) in &other.powers {
            *powers.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { powers }
    }

    /// Component-wise division; `None` if any exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut powers = self.powers.clone();
        for (v, &e) in &other.powers {
            match powers.get_mut(v) {
                Some(have) if *have >= e => {
                    *have -= e;
                    if *have == 0 {
                        powers.remove(v);
                    }
                }
                _ => return None,
            }
        }
        Some(Monomial { powers })
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the first variable
    /// (in name order) with a differing exponent decides.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.powers.iter().peekable();
        let mut b = other.powers.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.powers() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fmt_debug_as_display!();
}

/// A multivariate polynomial over the rationals.
///
/// The derived `Ord` (entry-wise over the term map) is not an algebraic
/// order; it serves as the deterministic structural key used to
/// canonicalize formulas and output.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(Rational::from(BigInt::from(n)))
    }

    pub fn variable(v: Var) -> Self {
        Polynomial::from_terms([(Monomial::var(v), Rational::one())])
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Polynomial::from_terms([(m, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Polynomial { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().cloned())
            .collect()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, v: &Var) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_of(v)).max()
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renames variables; names absent from the map are untouched.
    pub fn rename_vars(&self, map: &BTreeMap<Var, Var>) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let renamed = Monomial::from_powers(
                m.powers()
                    .map(|(v, e)| (map.get(v).cloned().unwrap_or_else(|| v.clone()), e)),
            );
            (renamed, c.clone())
        }))
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
        // power tables per variable; repeated squaring-free but each power
        // is computed once instead of once per term
        let mut powers: BTreeMap<&Var, Vec<Rational>> = BTreeMap::new();
        for (m, _) in &self.terms {
            for (v, e) in m.powers() {
                let val = point
                    .get(v)
                    .ok_or_else(|| Error::UnboundVariable(v.as_str().to_string()))?;
                let table = powers.entry(v).or_insert_with(|| vec![Rational::one()]);
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * val;
                    table.push(next);
                }
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.powers() {
                term *= &powers[v][e as usize];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Writes `self = c * p` with `c > 0` rational and `p` having coprime
    /// integer coefficients (sign pattern preserved). The zero polynomial
    /// yields `(1, 0)`.
    pub fn primitive_scale(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), Polynomial::zero());
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        // numer_gcd > 0 since some coefficient is nonzero
        let c = Rational::new(numer_gcd.clone(), denom_lcm.clone());
        let inv = Rational::new(denom_lcm, numer_gcd);
        (c, self.scale(&inv))
    }

    /// Canonical associate: coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        let (_, p) = self.primitive_scale();
        match p.leading_coefficient() {
            Some(lc) if lc.is_negative() => -&p,
            _ => p,
        }
    }

    /// Exact polynomial quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let (dm, dc) = d.leading_term().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.try_div(&dm)?;
            let c = rc / &dc;
            let piece = Polynomial::monomial(m.clone(), c.clone());
            rem = &rem - &(&piece * d);
            quot.push((m, c));
        }
        Some(Polynomial::from_terms(quot))
    }

    /// Coefficients of `self` viewed as a polynomial in `v`; index `i`
    /// holds the coefficient of `v^i`. Empty for the zero polynomial.
    pub fn coeffs_in(&self, v: &Var) -> Vec<Polynomial> {
        let Some(deg) = self.degree_in(v) else {
            return Vec::new();
        };
        let mut out = vec![Polynomial::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.degree_of(v);
            let rest = Monomial::from_powers(
                m.powers()
                    .filter(|(mv, _)| *mv != v)
                    .map(|(mv, me)| (mv.clone(), me)),
            );
            out[e as usize] = &out[e as usize] + &Polynomial::monomial(rest, c.clone());
        }
        out
    }

    /// Rewrites powers of `y` modulo `y^2 - d`, leaving degree at most 1
    /// in `y`. The difference to the input is divisible by `y^2 - d`.
    pub fn reduce_mod_quadratic(&self, y: &Var, d: u64) -> Polynomial {
        let d = BigInt::from(d);
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.degree_of(y);
            if e < 2 {
                return (m.clone(), c.clone());
            }
            let (q, b) = (e / 2, e % 2);
            let rest = Monomial::from_powers(
                m.powers()
                    .map(|(v, me)| (v.clone(), if v == y { b } else { me })),
            );
            (rest, c * Rational::from(d.pow(q)))
        }))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &-rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut terms: Vec<(Monomial, Rational)> = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // leading term first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fmt_debug_as_display!();
}
