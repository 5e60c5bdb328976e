//! Sparse multivariate polynomials over the rationals in the variables
//! u_1, v_1, u_2, v_2, ...
//!
//! Monomials are ordered graded-lexicographically with u_1 < v_1 < u_2 < v_2
//! < ...; the leading term is the maximal one in that order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::error::Error;
use crate::scalar::{PrimeField, Rational};

/// Which of the two variable families a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    U,
    V,
}

/// One ambient variable u_pos or v_pos (positions start at 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarIndex {
    pub axis: Axis,
    pub pos: usize,
}

impl VarIndex {
    pub fn u(pos: usize) -> Self {
        assert!(pos >= 1);
        VarIndex { axis: Axis::U, pos }
    }

    pub fn v(pos: usize) -> Self {
        assert!(pos >= 1);
        VarIndex { axis: Axis::V, pos }
    }

    /// Dense code respecting the canonical variable order u1 < v1 < u2 < ...
    pub fn code(&self) -> usize {
        2 * (self.pos - 1) + if self.axis == Axis::U { 0 } else { 1 }
    }

    pub fn from_code(code: usize) -> Self {
        VarIndex {
            axis: if code.is_multiple_of(2) { Axis::U } else { Axis::V },
            pos: code / 2 + 1,
        }
    }

    pub fn name(&self) -> String {
        match self.axis {
            Axis::U => format!("u{}", self.pos),
            Axis::V => format!("v{}", self.pos),
        }
    }
}

/// Number of variable slots in the packed exponent vector: u_1..u_8, v_1..v_8.
pub const MAX_VAR_CODES: usize = 16;

// Each variable gets one byte of the packed word, code 0 in the most
// significant position so that integer comparison is lexicographic
// comparison. Exponents are capped at 127 so SWAR tricks carry cleanly.
const MAX_EXP: u32 = 127;
const HIGH_BITS: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

/// A packed exponent vector. Supports up to 16 variables (component lengths
/// up to 8) with per-variable exponents up to 127.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    bits: u128,
}

#[inline]
fn shift_for(code: usize) -> u32 {
    assert!(
        code < MAX_VAR_CODES,
        "variable budget exceeded: the packed representation supports lengths up to 8"
    );
    8 * (MAX_VAR_CODES - 1 - code) as u32
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { degree: 0, bits: 0 }
    }

    pub fn var(code: usize) -> Self {
        Monomial { degree: 1, bits: 1u128 << shift_for(code) }
    }

    pub fn from_pairs(exps: Vec<(usize, u32)>) -> Self {
        let mut m = Monomial::unit();
        for (code, e) in exps {
            if e == 0 {
                continue;
            }
            let cur = m.degree_of(code);
            assert!(cur + e <= MAX_EXP, "exponent exceeds the packed budget");
            m.bits += (e as u128) << shift_for(code);
            m.degree += e;
        }
        m
    }

    /// Sparse (code, exponent) pairs in ascending code order.
    pub fn exps(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for code in 0..MAX_VAR_CODES {
            let e = self.degree_of(code);
            if e > 0 {
                out.push((code, e));
            }
        }
        out
    }

    pub fn is_unit(&self) -> bool {
        self.bits == 0
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn degree_of(&self, code: usize) -> u32 {
        ((self.bits >> shift_for(code)) & 0xff) as u32
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let out = Monomial { degree: self.degree + rhs.degree, bits: self.bits + rhs.bits };
        debug_assert!(
            (0..MAX_VAR_CODES).all(|c| out.degree_of(c) == self.degree_of(c) + rhs.degree_of(c)),
            "per-variable exponent overflow"
        );
        out
    }

    /// Exact monomial quotient, or `None` when some exponent would go negative.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        // Byte-wise a >= b, valid because all exponents stay below 128.
        if ((self.bits | HIGH_BITS) - rhs.bits) & HIGH_BITS != HIGH_BITS {
            return None;
        }
        Some(Monomial { degree: self.degree - rhs.degree, bits: self.bits - rhs.bits })
    }

    /// Remove one variable, returning (exponent of it, rest of the monomial).
    pub fn split_var(&self, code: usize) -> (u32, Monomial) {
        let e = self.degree_of(code);
        let rest = Monomial {
            degree: self.degree - e,
            bits: self.bits - ((e as u128) << shift_for(code)),
        };
        (e, rest)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded lexicographic: degree first, then the packed word (code 0
        // sits in the most significant byte, so bigger word = lex larger).
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => self.bits.cmp(&other.bits),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        Polynomial { terms }
    }

    pub fn var(v: VarIndex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v.code()), Rational::one());
        Polynomial { terms }
    }

    pub fn from_terms(pairs: Vec<(Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in pairs {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The constant value if this polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Products must stay inside the packed exponent budget.
        assert!(
            self.total_degree() + rhs.total_degree() <= MAX_EXP,
            "polynomial product exceeds the packed exponent budget"
        );
        let mut out = Polynomial::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, code: usize) -> u32 {
        self.terms.keys().map(|m| m.degree_of(code)).max().unwrap_or(0)
    }

    /// Codes of all variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for (c, _) in m.exps() {
                if !vs.contains(&c) {
                    vs.push(c);
                }
            }
        }
        vs.sort_unstable();
        vs
    }

    /// Leading (maximal) term in the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// View as univariate in `code`: exponent -> coefficient polynomial.
    pub fn as_univariate(&self, code: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(code) as usize;
        let mut coeffs = vec![Polynomial::zero(); deg + 1];
        for (m, c) in self.terms.iter() {
            let (e, rest) = m.split_var(code);
            coeffs[e as usize].add_term(rest, c.clone());
        }
        coeffs
    }

    /// Rebuild from a univariate view in `code`.
    pub fn from_univariate(coeffs: &[Polynomial], code: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, p) in coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let xe = Monomial::from_pairs(vec![(code, e as u32)]);
            for (m, c) in p.terms.iter() {
                out.add_term(m.mul(&xe), c.clone());
            }
        }
        out
    }

    /// Apply a signed variable permutation: `map(code)` gives (image code,
    /// negate?). Exponent vectors are remapped term by term.
    pub fn permute_signed(&self, map: &dyn Fn(usize) -> (usize, bool)) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms.iter() {
            let mut pairs = Vec::new();
            let mut flip = false;
            for (code, e) in m.exps() {
                let (img, neg) = map(code);
                if neg && e % 2 == 1 {
                    flip = !flip;
                }
                pairs.push((img, e));
            }
            let coeff = if flip { c.neg() } else { c.clone() };
            out.add_term(Monomial::from_pairs(pairs), coeff);
        }
        out
    }

    /// Replace every variable by a linear form; `forms(code)` gives the image
    /// of the variable with that code. Horner recursion over one variable at
    /// a time keeps the expansion near-linear in the output size.
    pub fn substitute_linear(&self, forms: &dyn Fn(usize) -> LinearForm) -> Polynomial {
        let mut image_cache: HashMap<usize, Polynomial> = HashMap::new();
        self.substitute_rec(forms, &mut image_cache)
    }

    fn substitute_rec(
        &self,
        forms: &dyn Fn(usize) -> LinearForm,
        images: &mut HashMap<usize, Polynomial>,
    ) -> Polynomial {
        if self.is_constant() {
            return self.clone();
        }
        // Recurse on the variable of highest degree to minimize depth.
        let main = *self
            .variables()
            .iter()
            .max_by_key(|&&v| self.degree_in(v))
            .unwrap();
        let coeffs = self.as_univariate(main);
        let image = images
            .entry(main)
            .or_insert_with(|| forms(main).to_polynomial())
            .clone();
        let mut acc = Polynomial::zero();
        for ck in coeffs.iter().rev() {
            acc = acc.mul(&image);
            if !ck.is_zero() {
                acc = acc.add(&ck.substitute_rec(forms, images));
            }
        }
        acc
    }

    /// Evaluate at a point given by `point[code]`, over any field value type.
    pub fn eval<V: FieldValue>(&self, point: &[V], field: &PrimeField) -> Result<V, Error> {
        let mut acc = V::zero(field);
        for (m, c) in self.terms.iter() {
            let mut t = V::from_rational(c, field)?;
            for (code, e) in m.exps() {
                let base = point[code];
                for _ in 0..e {
                    t = t.mul(base);
                }
            }
            acc = acc.add(t);
        }
        Ok(acc)
    }

    /// Evaluate at a rational point given by `point[code]`.
    pub fn eval_rational(&self, point: &dyn Fn(usize) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (code, e) in m.exps() {
                let base = point(code);
                for _ in 0..e {
                    t = t.mul(&base);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Joint rescale data: (gcd of numerators, lcm of denominators).
    pub fn int_content(&self) -> (BigInt, BigInt) {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer_big());
            den_lcm = den_lcm.lcm(&c.denom_big());
        }
        (num_gcd, den_lcm)
    }

    /// True if all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

/// A homogeneous integer linear form in the ambient variables (no constant
/// term); the only substitution target flexion calculus needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<(usize, i64)>, // sorted by code, no zeros
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm { coeffs: Vec::new() }
    }

    pub fn var(v: VarIndex) -> Self {
        LinearForm { coeffs: vec![(v.code(), 1)] }
    }

    pub fn from_pairs(pairs: Vec<(usize, i64)>) -> Self {
        let mut map: BTreeMap<usize, i64> = BTreeMap::new();
        for (c, k) in pairs {
            *map.entry(c).or_insert(0) += k;
        }
        LinearForm {
            coeffs: map.into_iter().filter(|&(_, k)| k != 0).collect(),
        }
    }

    pub fn coeffs(&self) -> &[(usize, i64)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &LinearForm) -> LinearForm {
        let mut pairs = self.coeffs.clone();
        pairs.extend_from_slice(&rhs.coeffs);
        Self::from_pairs(pairs)
    }

    pub fn sub(&self, rhs: &LinearForm) -> LinearForm {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|&(c, k)| (c, -k)).collect(),
        }
    }

    pub fn sum<'a>(forms: impl Iterator<Item = &'a LinearForm>) -> LinearForm {
        let mut pairs = Vec::new();
        for f in forms {
            pairs.extend_from_slice(&f.coeffs);
        }
        Self::from_pairs(pairs)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for &(code, k) in &self.coeffs {
            p.add_term(Monomial::var(code), Rational::from_int(k));
        }
        p
    }

    pub fn eval<V: FieldValue>(&self, point: &[V], field: &PrimeField) -> V {
        let mut acc = V::zero(field);
        for &(code, k) in &self.coeffs {
            let c = V::from_small_int(k, field);
            acc = acc.add(c.mul(point[code]));
        }
        acc
    }
}

/// Shared value interface for the evaluation backend (F_p and its dual-number
/// extension).
pub trait FieldValue: Copy + Eq + std::hash::Hash + std::fmt::Debug {
    fn zero(field: &PrimeField) -> Self;
    fn one(field: &PrimeField) -> Self;
    fn from_rational(q: &Rational, field: &PrimeField) -> Result<Self, Error>;
    fn from_small_int(k: i64, field: &PrimeField) -> Self;
    /// The nilpotent generator, when the value ring has one.
    fn eps(field: &PrimeField) -> Option<Self>;
    /// Build a sample coordinate from a base-field residue.
    fn from_residue(r: u64, field: &PrimeField) -> Self;
    /// Render as base-field residues, for witnesses.
    fn digest(&self) -> Vec<u64>;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn inv(self) -> Result<Self, Error>;
    fn is_zero(&self) -> bool;
}

impl FieldValue for crate::scalar::Fp {
    fn zero(field: &PrimeField) -> Self {
        crate::scalar::Fp::zero(field)
    }
    fn one(field: &PrimeField) -> Self {
        crate::scalar::Fp::one(field)
    }
    fn from_rational(q: &Rational, field: &PrimeField) -> Result<Self, Error> {
        q.to_fp(field)
    }
    fn from_small_int(k: i64, field: &PrimeField) -> Self {
        let m = field.modulus();
        let r = ((k % m as i64) + m as i64) as u64 % m;
        field.elem(r)
    }
    fn eps(_field: &PrimeField) -> Option<Self> {
        None
    }
    fn from_residue(r: u64, field: &PrimeField) -> Self {
        field.elem(r)
    }
    fn digest(&self) -> Vec<u64> {
        vec![self.residue()]
    }
    fn add(self, rhs: Self) -> Self {
        crate::scalar::Fp::add(self, rhs)
    }
    fn sub(self, rhs: Self) -> Self {
        crate::scalar::Fp::sub(self, rhs)
    }
    fn mul(self, rhs: Self) -> Self {
        crate::scalar::Fp::mul(self, rhs)
    }
    fn neg(self) -> Self {
        crate::scalar::Fp::neg(self)
    }
    fn inv(self) -> Result<Self, Error> {
        crate::scalar::Fp::inv(self)
    }
    fn is_zero(&self) -> bool {
        crate::scalar::Fp::is_zero(self)
    }
}

/// The dual numbers over F_p (eps squares to zero): value type for the
/// linearization checks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DualFp {
    pub re: crate::scalar::Fp,
    pub ep: crate::scalar::Fp,
}

impl FieldValue for DualFp {
    fn zero(field: &PrimeField) -> Self {
        DualFp { re: crate::scalar::Fp::zero(field), ep: crate::scalar::Fp::zero(field) }
    }
    fn one(field: &PrimeField) -> Self {
        DualFp { re: crate::scalar::Fp::one(field), ep: crate::scalar::Fp::zero(field) }
    }
    fn from_rational(q: &Rational, field: &PrimeField) -> Result<Self, Error> {
        Ok(DualFp { re: q.to_fp(field)?, ep: crate::scalar::Fp::zero(field) })
    }
    fn from_small_int(k: i64, field: &PrimeField) -> Self {
        DualFp {
            re: <crate::scalar::Fp as FieldValue>::from_small_int(k, field),
            ep: crate::scalar::Fp::zero(field),
        }
    }
    fn eps(field: &PrimeField) -> Option<Self> {
        Some(DualFp { re: crate::scalar::Fp::zero(field), ep: crate::scalar::Fp::one(field) })
    }
    fn from_residue(r: u64, field: &PrimeField) -> Self {
        DualFp { re: field.elem(r), ep: crate::scalar::Fp::zero(field) }
    }
    fn digest(&self) -> Vec<u64> {
        vec![self.re.residue(), self.ep.residue()]
    }
    fn add(self, rhs: Self) -> Self {
        DualFp { re: self.re.add(rhs.re), ep: self.ep.add(rhs.ep) }
    }
    fn sub(self, rhs: Self) -> Self {
        DualFp { re: self.re.sub(rhs.re), ep: self.ep.sub(rhs.ep) }
    }
    fn mul(self, rhs: Self) -> Self {
        DualFp {
            re: self.re.mul(rhs.re),
            ep: self.re.mul(rhs.ep).add(self.ep.mul(rhs.re)),
        }
    }
    fn neg(self) -> Self {
        DualFp { re: self.re.neg(), ep: self.ep.neg() }
    }
    fn inv(self) -> Result<Self, Error> {
        let r = self.re.inv()?;
        Ok(DualFp { re: r, ep: self.ep.mul(r).mul(r).neg() })
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ep.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> Polynomial {
        Polynomial::var(VarIndex::u(i))
    }

    #[test]
    fn monomial_order_matches_print_convention() {
        // u1^2*u2 > u1*u2^2 under graded lex with u1 < v1 < u2.
        let a = Monomial::from_pairs(vec![(VarIndex::u(1).code(), 2), (VarIndex::u(2).code(), 1)]);
        let b = Monomial::from_pairs(vec![(VarIndex::u(1).code(), 1), (VarIndex::u(2).code(), 2)]);
        assert!(a > b);
        // Degree dominates.
        let c = Monomial::var(VarIndex::u(1).code());
        assert!(b > c);
    }

    #[test]
    fn arithmetic_basics() {
        let p = u(1).add(&u(2));
        let q = u(1).sub(&u(2));
        assert_eq!(p.mul(&q), u(1).mul(&u(1)).sub(&u(2).mul(&u(2))));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.pow(2).num_terms(), 3);
    }

    #[test]
    fn univariate_roundtrip() {
        let p = u(1).pow(2).mul(&u(2)).add(&u(1)).add(&Polynomial::one());
        let code = VarIndex::u(1).code();
        let coeffs = p.as_univariate(code);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(Polynomial::from_univariate(&coeffs, code), p);
    }

    #[test]
    fn linear_substitution() {
        // u1 -> u1 + u2, u2 -> -u1 in u1*u2 gives -(u1+u2)*u1.
        let p = u(1).mul(&u(2));
        let img = p.substitute_linear(&|code| {
            if code == VarIndex::u(1).code() {
                LinearForm::from_pairs(vec![(VarIndex::u(1).code(), 1), (VarIndex::u(2).code(), 1)])
            } else {
                LinearForm::from_pairs(vec![(VarIndex::u(1).code(), -1)])
            }
        });
        let expect = u(1).add(&u(2)).mul(&u(1)).neg();
        assert_eq!(img, expect);
    }

    #[test]
    fn dual_numbers_square_zero() {
        let f = PrimeField::default_mersenne();
        let e = DualFp::eps(&f).unwrap();
        assert!(e.mul(e).is_zero());
        let x = DualFp { re: f.elem(5), ep: f.elem(7) };
        let y = x.inv().unwrap();
        assert_eq!(x.mul(y), DualFp::one(&f));
    }
}
