//! Normalized rational functions: the value type of exact bimould components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::gcd::{integer_primitive, poly_divexact, poly_gcd};
use super::poly::{FieldValue, LinearForm, Polynomial, VarIndex};
use crate::error::Error;
use crate::scalar::{PrimeField, Rational, Scalar};

/// Factored shape of a denominator: a positive integer constant times a
/// multiset of primitive degree-one polynomials with positive leading
/// coefficients. Every denominator flexion calculus produces has this shape,
/// and keeping it around turns the gcd in normalization into trial division.
#[derive(Clone, Debug)]
struct DenHint {
    constant: BigInt,
    linear: Vec<Polynomial>,
}

impl DenHint {
    fn one() -> Self {
        DenHint { constant: BigInt::one(), linear: Vec::new() }
    }

    fn product(&self) -> Polynomial {
        let mut p = Polynomial::constant(Rational::new(self.constant.clone(), BigInt::one()).unwrap());
        for f in &self.linear {
            p = p.mul(f);
        }
        p
    }
}

/// A rational function `num/den` with: nonzero denominator, `gcd(num, den) = 1`,
/// integer coefficients of joint content 1, and a positive leading coefficient
/// in the denominator. Zero is `0/1`, so equality is structural.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
    hint: Option<DenHint>,
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFun {}

impl RatFun {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.total_degree() == 1 {
            // A bare linear denominator seeds the factored fast path.
            return Self::normalized_hinted(num, Rational::one(), vec![den]);
        }
        // General route: cancel the polynomial gcd (defined up to a scalar,
        // so the value of the fraction is preserved by dividing both parts).
        let g = poly_gcd(&num, &den);
        let (num1, den1) = if g.is_one() {
            (num, den)
        } else {
            (
                poly_divexact(&num, &g).expect("gcd divides numerator"),
                poly_divexact(&den, &g).expect("gcd divides denominator"),
            )
        };
        let (num2, den2) = joint_rescale(num1, den1);
        RatFun { num: num2, den: den2, hint: None }
    }

    /// Normalization along the factored fast path: the value is
    /// `num / (scale * prod factors)`. Falls back to the general route when a
    /// factor is not linear.
    fn normalized_hinted(num: Polynomial, scale: Rational, factors: Vec<Polynomial>) -> Self {
        debug_assert!(!scale.is_zero());
        if num.is_zero() {
            return RatFun::zero();
        }
        let mut coeff = scale; // accumulated scalar part of the denominator
        let mut linear: Vec<Polynomial> = Vec::with_capacity(factors.len());
        if factors.iter().any(|f| f.total_degree() > 1) {
            // Not a product of linear forms after all: expand and redo.
            let mut den = Polynomial::constant(coeff);
            for f in &factors {
                den = den.mul(f);
            }
            return Self::normalized(num, den);
        }
        for f in factors {
            debug_assert!(!f.is_zero());
            if let Some(c) = f.constant_value() {
                coeff = coeff.mul(&c);
                continue;
            }
            // f = s * primitive with s carrying sign and content.
            let prim = integer_primitive(&f);
            let (g, l) = f.int_content();
            let mut s = Rational::new(g, l).expect("nonzero content");
            if !f.leading_term().unwrap().1.is_positive() {
                s = s.neg();
            }
            coeff = coeff.mul(&s);
            linear.push(prim);
        }
        // Move the scalar into the numerator; den becomes prod(linear).
        let mut num = num.scale(&coeff.inv().expect("nonzero denominator scalar"));
        // Cancel common linear factors by trial division (linear primitives
        // are irreducible, so this removes the whole gcd). An evaluation on
        // the factor's zero set rules out non-divisors cheaply first.
        let mut kept: Vec<Polynomial> = Vec::with_capacity(linear.len());
        let field = PrimeField::default_mersenne();
        let mut rng = crate::rng::SplitMix64::new(0xd1b54a32d192ed03);
        for f in linear {
            if !vanishes_on_factor(&num, &f, &field, &mut rng) {
                kept.push(f);
                continue;
            }
            match poly_divexact(&num, &f) {
                Some(q) => num = q,
                None => kept.push(f),
            }
        }
        // Integral rescale: clear numerator denominators, then strip the
        // joint integer content.
        let (_, num_den_lcm) = num.int_content();
        let mut num = num.scale(&Rational::new(num_den_lcm.clone(), BigInt::one()).unwrap());
        let mut constant = num_den_lcm;
        let (num_gcd, _) = num.int_content();
        let g = num_gcd.gcd(&constant);
        if !g.is_one() {
            num = num.scale(&Rational::new(BigInt::one(), g.clone()).unwrap());
            constant /= &g;
        }
        debug_assert!(constant.is_positive());
        let hint = DenHint { constant, linear: kept };
        let den = hint.product();
        debug_assert!(num.is_integral() && den.is_integral());
        RatFun { num, den, hint: Some(hint) }
    }

    pub fn zero() -> Self {
        RatFun { num: Polynomial::zero(), den: Polynomial::one(), hint: Some(DenHint::one()) }
    }

    pub fn one() -> Self {
        RatFun { num: Polynomial::one(), den: Polynomial::one(), hint: Some(DenHint::one()) }
    }

    pub fn constant(c: Rational) -> Self {
        Self::normalized_hinted(Polynomial::constant(c), Rational::one(), Vec::new())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::normalized_hinted(p, Rational::one(), Vec::new())
    }

    /// 1 / form, the shape every polar-unit component takes.
    pub fn inv_linear(form: &LinearForm) -> Result<Self, Error> {
        if form.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized_hinted(Polynomial::one(), Rational::one(), vec![form.to_polynomial()]))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value if this is a constant function.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.constant_value().unwrap();
            let d = self.den.constant_value().unwrap();
            Some(n.div(&d).expect("nonzero denominator"))
        } else {
            None
        }
    }

    fn fast_hint(&self) -> Option<&DenHint> {
        self.hint.as_ref()
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if let (Some(ha), Some(hb)) = (self.fast_hint(), rhs.fast_hint()) {
            // Split off the common factors: den_a = g * a', den_b = g * b'.
            let mut b_extra = hb.linear.clone();
            let mut a_extra: Vec<Polynomial> = Vec::with_capacity(ha.linear.len());
            let mut common: Vec<Polynomial> = Vec::new();
            for f in &ha.linear {
                if let Some(idx) = b_extra.iter().position(|g| g == f) {
                    common.push(b_extra.swap_remove(idx));
                } else {
                    a_extra.push(f.clone());
                }
            }
            let gc = ha.constant.gcd(&hb.constant);
            let ca = Rational::new(ha.constant.clone() / &gc, BigInt::one()).unwrap();
            let cb = Rational::new(hb.constant.clone() / &gc, BigInt::one()).unwrap();
            // num = n_a * (den_b / g) + n_b * (den_a / g).
            let mut left = self.num.scale(&cb);
            for f in &b_extra {
                left = left.mul(f);
            }
            let mut right = rhs.num.scale(&ca);
            for f in &a_extra {
                right = right.mul(f);
            }
            let num = left.add(&right);
            let scale = Rational::new(ha.constant.clone() * &hb.constant / gc, BigInt::one()).unwrap();
            let mut factors = common;
            factors.extend(a_extra);
            factors.extend(b_extra);
            return Self::normalized_hinted(num, scale, factors);
        }
        // General route with an explicit gcd of the denominators.
        let g = poly_gcd(&self.den, &rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                poly_divexact(&self.den, &g).expect("gcd divides"),
                poly_divexact(&rhs.den, &g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&db).add(&rhs.num.mul(&da));
        let den = self.den.mul(&db);
        Self::normalized(num, den)
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    /// Sum many fractions at once. When every term carries a factored
    /// denominator the sum is assembled over the common denominator with a
    /// single final normalization, which is far cheaper than folding.
    pub fn sum(terms: Vec<RatFun>) -> RatFun {
        let mut terms: Vec<RatFun> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return RatFun::zero();
        }
        if terms.len() == 1 {
            return terms.pop().unwrap();
        }
        if terms.iter().all(|t| t.hint.is_some()) {
            // Common denominator: multiset max of the linear factors, lcm of
            // the constants.
            let mut lcm_factors: Vec<(Polynomial, usize)> = Vec::new();
            let mut lcm_const = BigInt::one();
            for t in &terms {
                let h = t.hint.as_ref().unwrap();
                lcm_const = lcm_const.lcm(&h.constant);
                let mut counts: Vec<(usize, usize)> = Vec::new(); // (idx, count in t)
                for f in &h.linear {
                    match lcm_factors.iter().position(|(g, _)| g == f) {
                        Some(idx) => match counts.iter_mut().find(|(i, _)| *i == idx) {
                            Some((_, c)) => *c += 1,
                            None => counts.push((idx, 1)),
                        },
                        None => {
                            lcm_factors.push((f.clone(), 0));
                            counts.push((lcm_factors.len() - 1, 1));
                        }
                    }
                }
                for (idx, c) in counts {
                    if lcm_factors[idx].1 < c {
                        lcm_factors[idx].1 = c;
                    }
                }
            }
            let mut acc = Polynomial::zero();
            for t in &terms {
                let h = t.hint.as_ref().unwrap();
                let scale = Rational::new(lcm_const.clone() / &h.constant, BigInt::one()).unwrap();
                let mut part = t.num.scale(&scale);
                for (f, lcm_count) in &lcm_factors {
                    let have = h.linear.iter().filter(|g| *g == f).count();
                    for _ in have..*lcm_count {
                        part = part.mul(f);
                    }
                }
                acc = acc.add(&part);
            }
            let factors: Vec<Polynomial> = lcm_factors
                .into_iter()
                .flat_map(|(f, c)| std::iter::repeat_n(f, c))
                .collect();
            return Self::normalized_hinted(
                acc,
                Rational::new(lcm_const, BigInt::one()).unwrap(),
                factors,
            );
        }
        // Balanced pairwise fallback.
        let mut vals = terms;
        while vals.len() > 1 {
            let mut next = Vec::with_capacity(vals.len() / 2 + 1);
            let mut it = vals.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            vals = next;
        }
        vals.pop().unwrap()
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone(), hint: self.hint.clone() }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let (Some(ha), Some(hb)) = (self.fast_hint(), rhs.fast_hint()) {
            let num = self.num.mul(&rhs.num);
            let scale = Rational::new(ha.constant.clone() * &hb.constant, BigInt::one()).unwrap();
            let mut factors = ha.linear.clone();
            factors.extend(hb.linear.iter().cloned());
            return Self::normalized_hinted(num, scale, factors);
        }
        // Cross-cancel before multiplying to keep the gcds small.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let na = if g1.is_one() { self.num.clone() } else { poly_divexact(&self.num, &g1).unwrap() };
        let db = if g1.is_one() { rhs.den.clone() } else { poly_divexact(&rhs.den, &g1).unwrap() };
        let nb = if g2.is_one() { rhs.num.clone() } else { poly_divexact(&rhs.num, &g2).unwrap() };
        let da = if g2.is_one() { self.den.clone() } else { poly_divexact(&self.den, &g2).unwrap() };
        Self::normalized(na.mul(&nb), da.mul(&db))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(RatFun::zero());
        }
        Ok(self.mul(&RatFun { num: rhs.den.clone(), den: rhs.num.clone(), hint: None }))
    }

    /// Scalar multiple. Scaling cannot create or destroy polynomial factors,
    /// so only the integer contents need rebalancing.
    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() || self.is_zero() {
            return RatFun::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        match &self.hint {
            Some(h) => {
                // value = (num * cn) / (cd * constant * prod linear).
                let cn = c.numer_big();
                let cd = c.denom_big();
                let mut num = self.num.scale(&Rational::new(cn, BigInt::one()).unwrap());
                let mut constant = &h.constant * cd;
                let (g_num, _) = num.int_content();
                let g = g_num.gcd(&constant);
                if !g.is_one() {
                    num = num.scale(&Rational::new(BigInt::one(), g.clone()).unwrap());
                    constant /= &g;
                }
                let hint = DenHint { constant, linear: h.linear.clone() };
                let den = hint.product();
                RatFun { num, den, hint: Some(hint) }
            }
            None => {
                let (num, den) = joint_rescale(self.num.scale(c), self.den.clone());
                RatFun { num, den, hint: None }
            }
        }
    }

    /// Substitute each variable by a linear form; `forms(code)` gives the
    /// image of the variable with that code (codes up to 2 * component
    /// length). Linear denominators stay factored through substitution.
    pub fn substitute_linear(&self, forms: &dyn Fn(usize) -> LinearForm) -> Result<RatFun, Error> {
        if self.is_zero() {
            return Ok(RatFun::zero());
        }
        // Identity substitutions are common (truncations, rescalings, sums of
        // whole components) and free; signed permutations of the variables
        // (reversals, rotations, sign flips) only remap exponent vectors.
        let vars = {
            let mut vars = self.num.variables();
            for c in self.den.variables() {
                if !vars.contains(&c) {
                    vars.push(c);
                }
            }
            vars
        };
        if vars.iter().all(|&code| forms(code).coeffs() == [(code, 1)]) {
            return Ok(self.clone());
        }
        let signed_image = |code: usize| -> Option<(usize, bool)> {
            match forms(code).coeffs() {
                [(img, 1)] => Some((*img, false)),
                [(img, -1)] => Some((*img, true)),
                _ => None,
            }
        };
        let is_signed_perm = {
            let mut images: Vec<usize> = Vec::with_capacity(vars.len());
            let all_single = vars.iter().all(|&code| match signed_image(code) {
                Some((img, _)) => {
                    images.push(img);
                    true
                }
                None => false,
            });
            images.sort_unstable();
            images.dedup();
            all_single && images.len() == vars.len()
        };
        if is_signed_perm {
            let map = |code: usize| signed_image(code).expect("checked signed permutation");
            let num = self.num.permute_signed(&map);
            return match &self.hint {
                Some(h) => {
                    let factors: Vec<Polynomial> =
                        h.linear.iter().map(|f| f.substitute_linear(forms)).collect();
                    Ok(Self::normalized_hinted(
                        num,
                        Rational::new(h.constant.clone(), BigInt::one()).unwrap(),
                        factors,
                    ))
                }
                None => Ok(Self::normalized(num, self.den.permute_signed(&map))),
            };
        }
        let num = self.num.substitute_linear(forms);
        match &self.hint {
            Some(h) => {
                let mut factors = Vec::with_capacity(h.linear.len());
                for f in &h.linear {
                    let img = f.substitute_linear(forms);
                    if img.is_zero() {
                        return Err(Error::SubstitutionCollapse);
                    }
                    factors.push(img);
                }
                Ok(Self::normalized_hinted(
                    num,
                    Rational::new(h.constant.clone(), BigInt::one()).unwrap(),
                    factors,
                ))
            }
            None => {
                let den = self.den.substitute_linear(forms);
                if den.is_zero() {
                    return Err(Error::SubstitutionCollapse);
                }
                Ok(Self::normalized(num, den))
            }
        }
    }

    /// Evaluate at a point (indexed by variable code) over `V`.
    pub fn eval<V: FieldValue>(&self, point: &[V], field: &PrimeField) -> Result<V, Error> {
        let d = match &self.hint {
            Some(h) => {
                let mut acc = V::from_rational(
                    &Rational::new(h.constant.clone(), BigInt::one()).unwrap(),
                    field,
                )?;
                for f in &h.linear {
                    if acc.is_zero() {
                        break;
                    }
                    acc = acc.mul(f.eval(point, field)?);
                }
                acc
            }
            None => self.den.eval(point, field)?,
        };
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.eval(point, field)?;
        Ok(n.mul(d.inv()?))
    }

    /// Evaluate at a scalar point; every variable of the function must be
    /// assigned and all values must share one field context.
    pub fn eval_scalar(&self, point: &dyn Fn(VarIndex) -> Option<Scalar>) -> Result<Scalar, Error> {
        let fetch = |code: usize| -> Result<Rational, Error> {
            match point(VarIndex::from_code(code)) {
                Some(Scalar::Rat(q)) => Ok(q),
                Some(Scalar::Mod(_)) | None => Err(Error::ContextMismatch),
            }
        };
        let rational_ok = self
            .num
            .variables()
            .iter()
            .chain(self.den.variables().iter())
            .all(|&c| matches!(point(VarIndex::from_code(c)), Some(Scalar::Rat(_))));
        if rational_ok {
            let den = self.den.eval_rational(&|c| fetch(c).unwrap());
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let num = self.num.eval_rational(&|c| fetch(c).unwrap());
            return Ok(Scalar::Rat(num.div(&den)?));
        }
        // Prime-field path: all assignments must be Fp with one modulus.
        let mut modulus: Option<u64> = None;
        let vars: Vec<usize> = {
            let mut v = self.num.variables();
            for c in self.den.variables() {
                if !v.contains(&c) {
                    v.push(c);
                }
            }
            v
        };
        let mut max_code = 0;
        for &c in &vars {
            match point(VarIndex::from_code(c)) {
                Some(Scalar::Mod(x)) => {
                    if let Some(p) = modulus {
                        if p != x.modulus() {
                            return Err(Error::ContextMismatch);
                        }
                    }
                    modulus = Some(x.modulus());
                    max_code = max_code.max(c);
                }
                _ => return Err(Error::ContextMismatch),
            }
        }
        let p = modulus.ok_or(Error::ContextMismatch)?;
        let field = PrimeField::new(p)?;
        let mut coords = vec![crate::scalar::Fp::zero(&field); max_code + 1];
        for &c in &vars {
            if let Some(Scalar::Mod(x)) = point(VarIndex::from_code(c)) {
                coords[c] = x;
            }
        }
        Ok(Scalar::Mod(self.eval(&coords, &field)?))
    }

    /// Largest variable position occurring (0 for constants).
    pub fn max_position(&self) -> usize {
        let mut m = 0;
        for c in self.num.variables().into_iter().chain(self.den.variables()) {
            m = m.max(VarIndex::from_code(c).pos);
        }
        m
    }

    /// Joint integer content of numerator and denominator; 1 by invariant.
    pub fn joint_content(&self) -> BigInt {
        super::gcd::joint_int_content(&self.num, &self.den)
    }
}

// Necessary condition for a linear factor to divide `num`: `num` vanishes at
// a point of the factor's zero set. A nonzero value proves non-divisibility;
// a zero only routes into the exact trial division, so correctness never
// rests on this probe.
fn vanishes_on_factor(
    num: &Polynomial,
    f: &Polynomial,
    field: &PrimeField,
    rng: &mut crate::rng::SplitMix64,
) -> bool {
    // f = c0 + sum c_i x_i (degree one, possibly affine).
    let mut constant: Option<Rational> = None;
    let mut f_terms: Vec<(usize, Rational)> = Vec::new();
    for (m, c) in f.terms() {
        if m.is_unit() {
            constant = Some(c.clone());
        } else {
            f_terms.push((m.exps()[0].0, c.clone()));
        }
    }
    let (pivot_code, pivot_coeff) = match f_terms.first() {
        Some((c, k)) => (*c, k.clone()),
        None => return true,
    };
    let pivot_inv = match pivot_coeff.to_fp(field).and_then(|x| x.inv()) {
        Ok(v) => v,
        Err(_) => return true, // degenerate; let trial division decide
    };
    let max_code = num
        .variables()
        .into_iter()
        .chain(f_terms.iter().map(|&(c, _)| c))
        .max()
        .unwrap_or(0);
    let mut point = vec![crate::scalar::Fp::zero(field); max_code + 1];
    for slot in point.iter_mut() {
        *slot = field.elem(rng.next_u64());
    }
    // Solve f(point) = 0 for the pivot coordinate.
    let mut rest = match constant.map(|c| c.to_fp(field)) {
        Some(Ok(v)) => v,
        Some(Err(_)) => return true,
        None => crate::scalar::Fp::zero(field),
    };
    for (code, coeff) in &f_terms {
        if *code == pivot_code {
            continue;
        }
        match coeff.to_fp(field) {
            Ok(c) => rest = rest.add(c.mul(point[*code])),
            Err(_) => return true,
        }
    }
    point[pivot_code] = rest.neg().mul(pivot_inv);
    match num.eval(&point, field) {
        Ok(v) => crate::ratfun::poly::FieldValue::is_zero(&v),
        Err(_) => true,
    }
}

// One joint rational rescale making both parts integral with joint content 1
// and a positive denominator leading coefficient.
fn joint_rescale(num: Polynomial, den: Polynomial) -> (Polynomial, Polynomial) {
    let (gn, ln) = num.int_content();
    let (gd, ld) = den.int_content();
    let scale = Rational::new(ln.lcm(&ld), gn.gcd(&gd)).expect("nonzero content");
    let mut num2 = num.scale(&scale);
    let mut den2 = den.scale(&scale);
    if !den2.leading_term().map(|(_, c)| c.is_positive()).unwrap() {
        num2 = num2.neg();
        den2 = den2.neg();
    }
    debug_assert!(num2.is_integral() && den2.is_integral());
    (num2, den2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> Polynomial {
        Polynomial::var(VarIndex::u(i))
    }

    fn inv(p: Polynomial) -> RatFun {
        RatFun::new(Polynomial::one(), p).unwrap()
    }

    #[test]
    fn product_of_poles() {
        let f = inv(u(1)).mul(&inv(u(2)));
        assert_eq!(f, inv(u(1).mul(&u(2))));
    }

    #[test]
    fn partial_fraction_sum_vanishes() {
        // 1/u1 + 1/(u1+u2) - (2u1+u2)/(u1(u1+u2)) = 0, expanded over the
        // common denominator.
        let s = u(1).add(&u(2));
        let a = inv(u(1));
        let b = inv(s.clone());
        let c = RatFun::new(u(1).scale(&Rational::from_int(2)).add(&u(2)), u(1).mul(&s)).unwrap();
        assert!(a.add(&b).sub(&c).is_zero());
    }

    #[test]
    fn gcd_normalization_identifies_equal_fractions() {
        let lhs = inv(u(1));
        let rhs = RatFun::new(u(2), u(1).mul(&u(2))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sign_normalization() {
        // 1/(-u1) = -1/u1 with positive denominator leading coefficient.
        let f = RatFun::new(Polynomial::one(), u(1).neg()).unwrap();
        assert_eq!(f, inv(u(1)).neg());
        assert!(f.denominator().leading_term().unwrap().1.is_positive());
    }

    #[test]
    fn hinted_and_general_routes_agree() {
        // (u1 + u2)/(u1 * (u1+u2)^2) both ways.
        let s = u(1).add(&u(2));
        let den = u(1).mul(&s).mul(&s);
        let via_general = RatFun::new(s.clone(), den).unwrap();
        let via_factored = RatFun::inv_linear(&LinearForm::from_pairs(vec![
            (VarIndex::u(1).code(), 1),
            (VarIndex::u(2).code(), 1),
        ]))
        .unwrap()
        .mul(&inv(u(1)));
        assert_eq!(via_general, via_factored);
        assert_eq!(via_general.denominator(), via_factored.denominator());
    }

    #[test]
    fn scalar_denominators_fold() {
        // (1/2) * 1/u1 = 1/(2 u1): integer coefficients with joint content 1.
        let f = inv(u(1)).scale(&Rational::from_frac(1, 2));
        assert_eq!(f.denominator(), &u(1).scale(&Rational::from_int(2)));
        assert_eq!(f.numerator(), &Polynomial::one());
    }

    #[test]
    fn substitution_examples() {
        // 1/u1 under u1 -> u1+u2 gives 1/(u1+u2).
        let f = inv(u(1));
        let g = f
            .substitute_linear(&|code| {
                if code == VarIndex::u(1).code() {
                    LinearForm::from_pairs(vec![(VarIndex::u(1).code(), 1), (VarIndex::u(2).code(), 1)])
                } else {
                    LinearForm::var(VarIndex::from_code(code))
                }
            })
            .unwrap();
        assert_eq!(g, inv(u(1).add(&u(2))));

        // 1/(u1*v1) under (u1, v1) -> (-u1, -v1) is invariant.
        let h = RatFun::new(Polynomial::one(), u(1).mul(&Polynomial::var(VarIndex::v(1)))).unwrap();
        let img = h
            .substitute_linear(&|code| LinearForm::from_pairs(vec![(code, -1)]))
            .unwrap();
        assert_eq!(img, h);
    }

    #[test]
    fn substitution_collapse_detected() {
        let f = inv(u(1));
        let err = f.substitute_linear(&|_| LinearForm::zero());
        assert!(matches!(err, Err(Error::SubstitutionCollapse)));
    }

    #[test]
    fn scalar_evaluation_interface() {
        use crate::scalar::{PrimeField, Scalar};
        let f = inv(u(1).add(&u(2)));
        // Rational point: 1/(1 + 2) = 1/3.
        let rat = f
            .eval_scalar(&|v| match (v.axis, v.pos) {
                (crate::ratfun::poly::Axis::U, 1) => Some(Scalar::Rat(Rational::from_int(1))),
                (crate::ratfun::poly::Axis::U, 2) => Some(Scalar::Rat(Rational::from_int(2))),
                _ => None,
            })
            .unwrap();
        assert_eq!(rat, Scalar::Rat(Rational::from_frac(1, 3)));
        // Prime-field point.
        let field = PrimeField::default_mersenne();
        let modp = f
            .eval_scalar(&|v| match (v.axis, v.pos) {
                (crate::ratfun::poly::Axis::U, 1) => Some(Scalar::Mod(field.elem(1))),
                (crate::ratfun::poly::Axis::U, 2) => Some(Scalar::Mod(field.elem(2))),
                _ => None,
            })
            .unwrap();
        assert_eq!(modp, Scalar::Mod(field.elem(3).inv().unwrap()));
        // Pole and missing-assignment errors.
        assert!(matches!(
            f.eval_scalar(&|v| if v.pos == 1 {
                Some(Scalar::Rat(Rational::from_int(1)))
            } else {
                Some(Scalar::Rat(Rational::from_int(-1)))
            }),
            Err(Error::DivisionByZero)
        ));
        assert!(f.eval_scalar(&|_| None).is_err());
    }

    #[test]
    fn evaluation() {
        let field = PrimeField::default_mersenne();
        let f = inv(u(1).add(&u(2)));
        let pt = vec![field.elem(1), field.elem(0), field.elem(2), field.elem(0)];
        let v = f.eval(&pt, &field).unwrap();
        assert_eq!(v, field.elem(3).inv().unwrap());
        let pole = vec![field.elem(1), field.elem(0), field.elem(DEFAULT_P_MINUS_1), field.elem(0)];
        assert!(matches!(f.eval(&pole, &field), Err(Error::DivisionByZero)));
    }

    const DEFAULT_P_MINUS_1: u64 = (1u64 << 61) - 2;
}
