//! Exact multivariate polynomial and rational-function arithmetic over
//! the rationals. No floating point anywhere: the SMT scripts and the
//! induction engine both need exact coefficients.

mod gcd;
mod poly;
mod rf;

pub use gcd::poly_gcd;
pub use poly::{Monomial, Polynomial, Var};
pub use rf::{subst_poly, RationalFunction, RfValue};

/// Exact rational scalar, the coefficient field everywhere.
pub type Rational = num_rational::BigRational;

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_traits::Zero;

    use super::*;
    use crate::error::Error;
    use crate::parse::parse_expr;

    fn poly(src: &str) -> Polynomial {
        let rf = parse_expr(src).unwrap();
        assert!(rf.is_polynomial(), "{src} is not a polynomial");
        rf.num().clone()
    }

    fn rf(src: &str) -> RationalFunction {
        parse_expr(src).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_of_cyclotomic_product() {
        // oracle: expand (x^2+x+1)(x^2-x+1) and check it equals x^4+x^2+1
        let a = poly("x^2+x+1");
        let b = poly("x^2-x+1");
        assert_eq!(&a * &b, poly("x^4+x^2+1"));
        assert_eq!(poly_gcd(&poly("x^4+x^2+1"), &a), a);
    }

    #[test]
    fn gcd_with_zero_is_normalized_other() {
        let p = poly("4*x^2 - 4");
        assert_eq!(poly_gcd(&p, &Polynomial::zero()), poly("x^2 - 1"));
        assert_eq!(poly_gcd(&Polynomial::zero(), &Polynomial::zero()), Polynomial::zero());
    }

    #[test]
    fn gcd_of_monomials() {
        assert_eq!(poly_gcd(&poly("x*y"), &poly("y^2")), poly("y"));
    }

    #[test]
    fn gcd_divides_both_and_common_divisors_divide_it() {
        let d = poly("x*y - 1");
        let a = &d * &poly("x + 2*y");
        let b = &d * &poly("x^2 - y");
        let g = poly_gcd(&a, &b);
        assert!(a.div_exact(&g).is_some());
        assert!(b.div_exact(&g).is_some());
        assert!(g.div_exact(&d.normalized()).is_some());
    }

    #[test]
    fn rf_normalize_cancels_cyclotomic_factor() {
        assert_eq!(rf("(x^4+x^2+1)/(x^2+x+1)"), rf("x^2-x+1"));
    }

    #[test]
    fn rf_normalize_zero_numerator() {
        let z = RationalFunction::new(Polynomial::zero(), poly("x")).unwrap();
        assert!(z.is_zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn rf_normalize_joint_content() {
        // (2x)/(4x^2) cancels to 1/(2x)
        let f = RationalFunction::new(poly("2*x"), poly("4*x^2")).unwrap();
        assert_eq!(f.num(), &Polynomial::one());
        assert_eq!(f.den(), &poly("2*x"));
    }

    #[test]
    fn rf_normalize_rejects_zero_denominator() {
        assert!(matches!(
            RationalFunction::new(poly("x"), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn rf_normalize_is_idempotent() {
        for src in ["(2*x)/(4*x^2)", "(x^4+x^2+1)/(x^2+x+1)", "(x-1)/(x*y+3)", "x/2 - 1/3"] {
            let f = rf(src);
            let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
            assert_eq!(f, again, "{src}");
        }
    }

    #[test]
    fn rf_like_terms_add() {
        assert_eq!(rf("1/x").add(&rf("1/x")), rf("2/x"));
    }

    #[test]
    fn rf_cross_multiplied_difference_is_zero() {
        let diff = rf("(x^4+x^2+1)/(x^2+x+1)").sub(&rf("x^2-x+1"));
        assert!(diff.is_zero());
    }

    #[test]
    fn rf_self_division_is_one() {
        let q = rf("1/x").div(&rf("1/x")).unwrap();
        assert_eq!(q, RationalFunction::one());
        assert!(matches!(
            rf("1/x").div(&RationalFunction::zero()),
            Err(Error::DivisionByZeroFunction)
        ));
    }

    #[test]
    fn rf_eval_examples() {
        let pt: BTreeMap<Var, Rational> = [(Var::new("x"), rat(2, 1))].into();
        assert_eq!(
            rf("(x^4+x^2+1)/(x^2+x+1)").eval(&pt).unwrap(),
            RfValue::Finite(rat(3, 1))
        );
        let origin: BTreeMap<Var, Rational> = [(Var::new("x"), Rational::zero())].into();
        assert_eq!(rf("1/x").eval(&origin).unwrap(), RfValue::Pole);
        assert_eq!(
            rf("7/2").eval(&origin).unwrap(),
            RfValue::Finite(rat(7, 2))
        );
        assert!(matches!(
            rf("x*y").eval(&origin),
            Err(Error::UnboundVariable(v)) if v == "y"
        ));
    }

    #[test]
    fn reduce_mod_quadratic_examples() {
        let y = Var::new("y");
        assert_eq!(poly("y^2").reduce_mod_quadratic(&y, 5), poly("5"));
        assert_eq!(poly("y^3 + y").reduce_mod_quadratic(&y, 5), poly("6*y"));
        let p = poly("x^2 + 3*x");
        assert_eq!(p.reduce_mod_quadratic(&y, 5), p);
    }

    #[test]
    fn reduce_mod_quadratic_divisibility() {
        let y = Var::new("y");
        let modulus = poly("y^2 - 5");
        for src in ["y^5 + x*y^4 - 3*y^2 + y + 7", "y^7", "(y^2+y)*(y^3-x)"] {
            let p = poly(src);
            let r = p.reduce_mod_quadratic(&y, 5);
            assert!(r.degree_in(&y).unwrap_or(0) <= 1, "{src}");
            let diff = &p - &r;
            assert!(diff.div_exact(&modulus).is_some(), "{src}");
        }
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let x = Monomial::var(Var::new("x"));
        let y = Monomial::var(Var::new("y"));
        let x2 = x.mul(&x);
        let xy = x.mul(&y);
        assert!(x2 > xy);
        assert!(xy > y.mul(&y));
        assert!(x > y);
        assert!(xy > x); // higher total degree wins
        assert_eq!(poly("x^2 - x + 1").leading_term().unwrap().0, &x2);
    }

    #[test]
    fn div_exact_detects_non_divisors() {
        let p = poly("x^2 - 1");
        assert_eq!(p.div_exact(&poly("x - 1")), Some(poly("x + 1")));
        assert_eq!(p.div_exact(&poly("x + 2")), None);
        assert_eq!(p.div_exact(&Polynomial::zero()), None);
    }

    #[test]
    fn normalized_clears_content_and_sign() {
        assert_eq!(poly("-2*x + 4").normalized(), poly("x - 2"));
        assert_eq!(poly("x/2 - 1/3").normalized(), poly("3*x - 2"));
    }
}
