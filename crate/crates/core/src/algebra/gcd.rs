//! Multivariate polynomial gcd via a subresultant pseudo-remainder
//! sequence.
//!
//! The recursion treats the largest occurring variable as the main one,
//! splits both inputs into content and primitive part with respect to it,
//! and runs the subresultant PRS on the primitive parts. The subresultant
//! divisors keep coefficient growth polynomial without taking contents at
//! every step (those contents would each recurse into full gcds and
//! dominate the runtime on unlucky inputs).

use super::poly::{Polynomial, Var};

/// Greatest common divisor, normalized to coprime integer coefficients
/// with a positive leading coefficient. `gcd(p, 0) = normalized(p)` and
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let v = a
        .vars()
        .into_iter()
        .chain(b.vars())
        .max()
        .expect("nonconstant polynomials have variables");
    let (ca, pa) = content_and_primitive(a, &v);
    let (cb, pb) = content_and_primitive(b, &v);
    let content_gcd = poly_gcd(&ca, &cb);

    let pp_gcd = if pa.degree_in(&v).unwrap_or(0) == 0 || pb.degree_in(&v).unwrap_or(0) == 0 {
        // one side is free of the main variable after content removal
        Polynomial::one()
    } else {
        subresultant_prs(pa, pb, &v)
    };
    (&content_gcd * &pp_gcd).normalized()
}

/// Splits `p = content * primitive` with respect to `v`, where the content
/// is the gcd of the coefficient polynomials of the powers of `v`.
fn content_and_primitive(p: &Polynomial, v: &Var) -> (Polynomial, Polynomial) {
    let coeffs = p.coeffs_in(v);
    let mut content = Polynomial::zero();
    for c in &coeffs {
        content = poly_gcd(&content, c);
        if content.is_one() {
            break;
        }
    }
    let primitive = p
        .div_exact(&content)
        .expect("content divides the polynomial");
    (content, primitive)
}

fn subresultant_prs(mut f: Polynomial, mut g: Polynomial, v: &Var) -> Polynomial {
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut lead = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let df = f.degree_in(v).unwrap_or(0);
        let dg = g.degree_in(v).unwrap_or(0);
        let delta = df - dg;
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return content_and_primitive(&g, v).1.normalized();
        }
        let divisor = &lead * &h.pow(delta);
        let next = r
            .div_exact(&divisor)
            .expect("subresultant divisions are exact");
        f = g;
        g = next;
        lead = coeff_of_power(&f, v, f.degree_in(v).unwrap_or(0));
        h = if delta == 0 {
            h
        } else {
            lead.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact")
        };
    }
}

/// Canonical pseudo-remainder `lc(g)^(deg f - deg g + 1) * f mod g` in the
/// variable `v`; degree below deg_v(g), polynomial operations only.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: &Var) -> Polynomial {
    let dg = g.degree_in(v).expect("divisor is nonzero");
    let df = f.degree_in(v).expect("dividend is nonzero");
    let lead_g = coeff_of_power(g, v, dg);
    let mut r = f.clone();
    let mut spare = df + 1 - dg; // multiplier applications still owed
    while let Some(dr) = r.degree_in(v) {
        if dr < dg {
            break;
        }
        let lead_r = coeff_of_power(&r, v, dr);
        let shift = Polynomial::variable(v.clone()).pow(dr - dg);
        r = &(&lead_g * &r) - &(&(&lead_r * &shift) * g);
        spare -= 1;
    }
    for _ in 0..spare {
        r = &lead_g * &r;
    }
    r
}

fn coeff_of_power(p: &Polynomial, v: &Var, e: u32) -> Polynomial {
    p.coeffs_in(v)
        .into_iter()
        .nth(e as usize)
        .unwrap_or_else(Polynomial::zero)
}
