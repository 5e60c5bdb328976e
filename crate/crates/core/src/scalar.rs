//! Exact scalar arithmetic: arbitrary-precision rationals and a large prime
//! field, behind one `Scalar` interface.
//!
//! `Rational` is the coefficient field of the exact backend; `Fp` is the value
//! field of the probabilistic evaluation backend. All values are immutable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;

/// Default evaluation modulus: the Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1u64 << 61) - 1;

/// Smallest modulus accepted for the evaluation field.
pub const MIN_PRIME: u64 = 1u64 << 60;

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// An arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. Zero is `0/1`. Values that fit in machine words use
/// a compact representation; arithmetic falls back to big integers exactly
/// when an intermediate would overflow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // num, den: den > 0, gcd(|num|, den) = 1.
    Small(i64, i64),
    // Same invariants; only used when the value does not fit in Small.
    Big(BigInt, BigInt),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized_big(num, den))
    }

    fn normalized_big(mut num: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num /= &g;
                den /= &g;
            }
        }
        match (i64::try_from(&num), i64::try_from(&den)) {
            (Ok(n), Ok(d)) => Rational { repr: Repr::Small(n, d) },
            _ => Rational { repr: Repr::Big(num, den) },
        }
    }

    // num/den as signed 128-bit values; reduces and demotes when possible.
    fn normalized_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if den != 1 {
            let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
            if g > 1 {
                num /= g;
                den /= g;
            }
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational { repr: Repr::Small(n, d) },
            _ => Rational { repr: Repr::Big(BigInt::from(num), BigInt::from(den)) },
        }
    }

    pub fn zero() -> Self {
        Rational { repr: Repr::Small(0, 1) }
    }

    pub fn one() -> Self {
        Rational { repr: Repr::Small(1, 1) }
    }

    pub fn from_int(n: i64) -> Self {
        Rational { repr: Repr::Small(n, 1) }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::normalized_i128(num as i128, den as i128)
    }

    /// Numerator, as a big integer.
    pub fn numer_big(&self) -> BigInt {
        match &self.repr {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(n, _) => n.clone(),
        }
    }

    /// Denominator (always positive), as a big integer.
    pub fn denom_big(&self) -> BigInt {
        match &self.repr {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(_, d) => d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.repr {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(_, d) => d.is_one(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.repr {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(n, _) => n.is_positive(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (&self.repr, &rhs.repr) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                if *d1 == 1 && *d2 == 1 {
                    if let Some(s) = n1.checked_add(*n2) {
                        return Rational { repr: Repr::Small(s, 1) };
                    }
                }
                let num = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
                Self::normalized_i128(num, *d1 as i128 * *d2 as i128)
            }
            _ => Self::normalized_big(
                self.numer_big() * rhs.denom_big() + rhs.numer_big() * self.denom_big(),
                self.denom_big() * rhs.denom_big(),
            ),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (&self.repr, &rhs.repr) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                if *d1 == 1 && *d2 == 1 {
                    if let Some(p) = n1.checked_mul(*n2) {
                        return Rational { repr: Repr::Small(p, 1) };
                    }
                }
                Self::normalized_i128(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => Self::normalized_big(
                self.numer_big() * rhs.numer_big(),
                self.denom_big() * rhs.denom_big(),
            ),
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.repr, &rhs.repr) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                Self::normalized_i128(*n1 as i128 * *d2 as i128, *d1 as i128 * *n2 as i128)
            }
            _ => Self::normalized_big(
                self.numer_big() * rhs.denom_big(),
                self.denom_big() * rhs.numer_big(),
            ),
        })
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational { repr: Repr::Small(m, *d) },
                None => Self::normalized_big(-self.numer_big(), self.denom_big()),
            },
            Repr::Big(n, d) => Self::normalized_big(-n.clone(), d.clone()),
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Small(n, d) => Self::normalized_i128(*d as i128, *n as i128),
            Repr::Big(n, d) => Self::normalized_big(d.clone(), n.clone()),
        })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&Rational::from_int(k))
    }

    /// Reduce into F_p. The denominator of a reduced rational is never
    /// divisible by a 61-bit prime in this engine's workloads, but a pole in
    /// the embedding is still reported rather than silently mangled.
    pub fn to_fp(&self, field: &PrimeField) -> Result<Fp, Error> {
        let p = field.p;
        let (n64, d64) = match &self.repr {
            Repr::Small(n, d) => (n.rem_euclid(p as i64) as u64, (*d as u64) % p),
            Repr::Big(n, d) => {
                let pb = BigInt::from(p);
                (
                    u64::try_from(&n.mod_floor(&pb)).expect("residue fits u64"),
                    u64::try_from(&d.mod_floor(&pb)).expect("residue fits u64"),
                )
            }
        };
        let num = Fp::new(n64, p);
        let den = Fp::new(d64, p);
        num.div(den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(n, d) => {
                if d.is_one() {
                    write!(f, "{n}")
                } else {
                    write!(f, "{n}/{d}")
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// A validated prime-field context. Every `Fp` value carries its modulus, so
/// mixing contexts is detected at the point of use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Build a context, checking the modulus is a prime of at least 60 bits.
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < MIN_PRIME {
            return Err(Error::BadModulus(format!("{p} is below 2^60")));
        }
        if !is_prime_u64(p) {
            return Err(Error::BadModulus(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn default_mersenne() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp::new(v % self.p, self.p)
    }
}

/// One element of F_p with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

#[allow(clippy::should_implement_trait)] // by-value field methods mirror the Rational surface
impl Fp {
    fn new(v: u64, p: u64) -> Self {
        debug_assert!(v < p);
        Fp { v, p }
    }

    pub fn residue(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(field: &PrimeField) -> Self {
        Fp::new(0, field.p)
    }

    pub fn one(field: &PrimeField) -> Self {
        Fp::new(1, field.p)
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn check(&self, rhs: &Fp) -> u64 {
        assert_eq!(self.p, rhs.p, "prime-field context mismatch");
        self.p
    }

    pub fn add(self, rhs: Fp) -> Fp {
        let p = self.check(&rhs);
        let s = self.v + rhs.v;
        Fp::new(if s >= p { s - p } else { s }, p)
    }

    pub fn sub(self, rhs: Fp) -> Fp {
        let p = self.check(&rhs);
        let s = if self.v >= rhs.v { self.v - rhs.v } else { self.v + p - rhs.v };
        Fp::new(s, p)
    }

    pub fn mul(self, rhs: Fp) -> Fp {
        let p = self.check(&rhs);
        Fp::new(((self.v as u128 * rhs.v as u128) % p as u128) as u64, p)
    }

    pub fn neg(self) -> Fp {
        Fp::new(if self.v == 0 { 0 } else { self.p - self.v }, self.p)
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Fp, Error> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }

    pub fn div(self, rhs: Fp) -> Result<Fp, Error> {
        self.check(&rhs);
        Ok(self.mul(rhs.inv()?))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs with this witness set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Unified scalar surface
// ---------------------------------------------------------------------------

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldContext {
    ExactRational,
    PrimeField(PrimeField),
}

/// A value in one of the two fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(Rational),
    Mod(Fp),
}

/// Binary and unary field operations, for the dispatch-style entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl Scalar {
    pub fn context(&self) -> FieldContext {
        match self {
            Scalar::Rat(_) => FieldContext::ExactRational,
            Scalar::Mod(x) => FieldContext::PrimeField(PrimeField { p: x.modulus() }),
        }
    }

    fn same_context(&self, rhs: &Scalar) -> Result<(), Error> {
        match (self, rhs) {
            (Scalar::Rat(_), Scalar::Rat(_)) => Ok(()),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus() == b.modulus() => Ok(()),
            _ => Err(Error::ContextMismatch),
        }
    }
}

/// Field arithmetic over `Scalar`. Unary ops ignore `b`.
pub fn field_arith(a: &Scalar, b: Option<&Scalar>, op: FieldOp) -> Result<Scalar, Error> {
    let binary = |a: &Scalar, b: &Scalar| -> Result<(), Error> { a.same_context(b) };
    match op {
        FieldOp::Neg => Ok(match a {
            Scalar::Rat(x) => Scalar::Rat(x.neg()),
            Scalar::Mod(x) => Scalar::Mod(x.neg()),
        }),
        FieldOp::Inv => Ok(match a {
            Scalar::Rat(x) => Scalar::Rat(x.inv()?),
            Scalar::Mod(x) => Scalar::Mod(x.inv()?),
        }),
        _ => {
            let b = b.ok_or(Error::ContextMismatch)?;
            binary(a, b)?;
            Ok(match (a, b) {
                (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(match op {
                    FieldOp::Add => x.add(y),
                    FieldOp::Sub => x.sub(y),
                    FieldOp::Mul => x.mul(y),
                    FieldOp::Div => x.div(y)?,
                    _ => unreachable!(),
                }),
                (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(match op {
                    FieldOp::Add => x.add(*y),
                    FieldOp::Sub => x.sub(*y),
                    FieldOp::Mul => x.mul(*y),
                    FieldOp::Div => x.div(*y)?,
                    _ => unreachable!(),
                }),
                _ => unreachable!(),
            })
        }
    }
}
