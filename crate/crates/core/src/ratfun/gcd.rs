//! Multivariate polynomial gcd by content extraction and a recursive
//! univariate subresultant PRS.
//!
//! All denominators arising in flexion calculus are products of integer
//! linear forms, so the gcds stay small and structured; this routine favours
//! simplicity and exactness over asymptotic cleverness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::Polynomial;
use crate::scalar::Rational;

/// Exact polynomial quotient, or `None` when `b` does not divide `a`.
pub fn poly_divexact(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Polynomial::zero());
    }
    let (lead_m, lead_c) = b.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
    let mut rem = a.clone();
    let mut quot = Polynomial::zero();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let qm = rm.div(&lead_m)?;
        let qc = rc.div(&lead_c).expect("nonzero leading coefficient");
        let mut t = Polynomial::zero();
        t.add_term(qm, qc);
        rem = rem.sub(&t.mul(b));
        quot = quot.add(&t);
    }
    Some(quot)
}

/// Strip rational content: returns the integer-primitive image with positive
/// leading coefficient. Zero maps to zero.
pub fn integer_primitive(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let (num_gcd, den_lcm) = p.int_content();
    let scale = Rational::new(den_lcm, num_gcd).expect("nonzero content");
    let mut out = p.scale(&scale);
    if let Some((_, c)) = out.leading_term() {
        if !c.is_positive() {
            out = out.neg();
        }
    }
    out
}

/// Gcd over Q[u_1, v_1, ...], normalized to integer-primitive form with a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let a = integer_primitive(a);
    let b = integer_primitive(b);
    gcd_primitive(&a, &b)
}

// Both arguments integer-primitive (or zero).
fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        // Primitive constants are +-1.
        return Polynomial::one();
    }
    let vars_a = a.variables();
    let vars_b = b.variables();
    let common: Vec<usize> = vars_a.iter().copied().filter(|v| vars_b.contains(v)).collect();
    if common.is_empty() {
        return Polynomial::one();
    }
    // Main variable: smallest combined degree keeps the PRS short.
    let main = *common
        .iter()
        .min_by_key(|&&v| a.degree_in(v) as usize + b.degree_in(v) as usize)
        .unwrap();

    let ua = a.as_univariate(main);
    let ub = b.as_univariate(main);
    let (cont_a, pp_a) = univ_content_split(&ua);
    let (cont_b, pp_b) = univ_content_split(&ub);
    let cont_gcd = gcd_primitive(&cont_a, &cont_b);

    let prs = subresultant_last(&pp_a, &pp_b);
    let raw = match prs {
        None => {
            // x-degree zero gcd: only the contents survive.
            return integer_primitive(&cont_gcd);
        }
        Some(last) => last,
    };
    let (_, pp_last) = univ_content_split(&raw);
    let g = Polynomial::from_univariate(&pp_last, main).mul(&cont_gcd);
    integer_primitive(&g)
}

// Content (gcd of the coefficients) and the coefficient-wise quotient.
fn univ_content_split(coeffs: &[Polynomial]) -> (Polynomial, Vec<Polynomial>) {
    let mut cont = Polynomial::zero();
    for c in coeffs {
        if !c.is_zero() {
            cont = gcd_primitive(&cont, &integer_primitive(c));
        }
    }
    if cont.is_zero() {
        return (Polynomial::zero(), coeffs.to_vec());
    }
    let pp: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                Polynomial::zero()
            } else {
                poly_divexact(c, &cont).expect("content divides")
            }
        })
        .collect();
    (cont, pp)
}

fn univ_deg(p: &[Polynomial]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn univ_trim(mut p: Vec<Polynomial>) -> Vec<Polynomial> {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, coefficients exact.
fn pseudo_rem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let da = univ_deg(a).unwrap();
    let db = univ_deg(b).unwrap();
    debug_assert!(da >= db);
    let lcb = &b[db];
    let mut r = a.to_vec();
    let mut scale_left = da - db + 1;
    loop {
        let dr = match univ_deg(&r) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for k in 0..=db {
            r[dr - db + k] = r[dr - db + k].sub(&lr.mul(&b[k]));
        }
        r = univ_trim(r);
        scale_left -= 1;
        if r.is_empty() {
            break;
        }
    }
    for _ in 0..scale_left {
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
    }
    r
}

// The last nonzero element of the subresultant PRS, or `None` when it is a
// (nonzero) constant in the main variable.
fn subresultant_last(a: &[Polynomial], b: &[Polynomial]) -> Option<Vec<Polynomial>> {
    let (mut r0, mut r1) = if univ_deg(a) >= univ_deg(b) {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let d0 = univ_deg(&r0).unwrap();
        let d1 = univ_deg(&r1).unwrap();
        if d1 == 0 {
            return None;
        }
        let d = d0 - d1;
        let rem = pseudo_rem(&r0, &r1);
        if rem.is_empty() {
            return Some(r1);
        }
        // Subresultant scaling: divide by g * h^d.
        let divisor = g.mul(&h.pow(d as u32));
        let reduced: Vec<Polynomial> = rem
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Polynomial::zero()
                } else {
                    poly_divexact(c, &divisor).expect("subresultant divisor divides")
                }
            })
            .collect();
        g = r1[d1].clone();
        h = if d == 0 {
            h
        } else if d == 1 {
            g.clone()
        } else {
            poly_divexact(&g.pow(d as u32), &h.pow(d as u32 - 1)).expect("h update divides")
        };
        r0 = r1;
        r1 = univ_trim(reduced);
    }
}

/// Integer gcd over all coefficients of both polynomials, as a `BigInt`.
pub fn joint_int_content(a: &Polynomial, b: &Polynomial) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in a.terms() {
        g = g.gcd(&c.numer_big());
    }
    for (_, c) in b.terms() {
        g = g.gcd(&c.numer_big());
    }
    g.abs()
}
