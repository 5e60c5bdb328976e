//! The core data model: length-graded bimoulds, flexion markers, the unary
//! operator family, the uninflected product mu with its Lie bracket, and
//! mu-inversion.
//!
//! A component of length r is a rational function of u_1..u_r, v_1..v_r. The
//! exact backend stores it as a normalized `RatFun`; the evaluation backend
//! stores a deferred expression node evaluated (with memoization) at prime
//! field points. Derived components are always described as sums of products
//! of input components taken at marker-transformed argument sequences, and
//! both backends interpret that same description.

pub mod eval;

use std::sync::Arc;

use crate::error::Error;
use crate::ratfun::{LinearForm, Polynomial, RatFun, VarIndex};
use crate::rng::SplitMix64;
use crate::scalar::Rational;

use eval::{Node, NodeKind, NodeTerm};

// ---------------------------------------------------------------------------
// Sequences and flexion markers
// ---------------------------------------------------------------------------

/// One letter w_i = (u-argument; v-argument), both integer linear forms in
/// the ambient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub u: LinearForm,
    pub v: LinearForm,
}

/// A word of letters; the argument of one bimould component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seq(pub Vec<Letter>);

impl Seq {
    pub fn empty() -> Self {
        Seq(Vec::new())
    }

    /// The identity word (u_1, v_1), ..., (u_r, v_r).
    pub fn identity(r: usize) -> Self {
        Seq((1..=r)
            .map(|i| Letter {
                u: LinearForm::var(VarIndex::u(i)),
                v: LinearForm::var(VarIndex::v(i)),
            })
            .collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> &[Letter] {
        &self.0[range]
    }

    pub fn concat(parts: &[&[Letter]]) -> Seq {
        let mut out = Vec::new();
        for p in parts {
            out.extend_from_slice(p);
        }
        Seq(out)
    }

    /// Linear form for a child variable code under this argument sequence.
    pub fn form_for_code(&self, code: usize) -> LinearForm {
        let letter = &self.0[code / 2];
        if code.is_multiple_of(2) {
            letter.u.clone()
        } else {
            letter.v.clone()
        }
    }
}

/// The four flexion markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkerSide {
    UpperLeft,
    UpperRight,
    LowerLeft,
    LowerRight,
}

fn sum_u(letters: &[Letter]) -> LinearForm {
    LinearForm::sum(letters.iter().map(|l| &l.u))
}

/// Target with its first letter's u-argument raised by the context u-sum.
pub fn upper_left(ctx: &[Letter], target: &[Letter]) -> Vec<Letter> {
    let mut out = target.to_vec();
    if ctx.is_empty() || out.is_empty() {
        return out;
    }
    out[0].u = out[0].u.add(&sum_u(ctx));
    out
}

/// Target with its last letter's u-argument raised by the context u-sum.
pub fn upper_right(target: &[Letter], ctx: &[Letter]) -> Vec<Letter> {
    let mut out = target.to_vec();
    if ctx.is_empty() || out.is_empty() {
        return out;
    }
    let last = out.len() - 1;
    out[last].u = out[last].u.add(&sum_u(ctx));
    out
}

/// Target with every v-argument lowered by the context's last v-argument.
pub fn lower_left(ctx: &[Letter], target: &[Letter]) -> Vec<Letter> {
    let mut out = target.to_vec();
    if ctx.is_empty() || out.is_empty() {
        return out;
    }
    let shift = ctx.last().unwrap().v.clone();
    for l in out.iter_mut() {
        l.v = l.v.sub(&shift);
    }
    out
}

/// Target with every v-argument lowered by the context's first v-argument.
pub fn lower_right(target: &[Letter], ctx: &[Letter]) -> Vec<Letter> {
    let mut out = target.to_vec();
    if ctx.is_empty() || out.is_empty() {
        return out;
    }
    let shift = ctx[0].v.clone();
    for l in out.iter_mut() {
        l.v = l.v.sub(&shift);
    }
    out
}

/// Spec-level entry point for a single marker application.
pub fn flexion_mark(side: MarkerSide, context: &Seq, target: &Seq) -> Seq {
    Seq(match side {
        MarkerSide::UpperLeft => upper_left(&context.0, &target.0),
        MarkerSide::UpperRight => upper_right(&target.0, &context.0),
        MarkerSide::LowerLeft => lower_left(&context.0, &target.0),
        MarkerSide::LowerRight => lower_right(&target.0, &context.0),
    })
}

// ---------------------------------------------------------------------------
// Components and bimoulds
// ---------------------------------------------------------------------------

/// Which machinery materializes derived components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Eval,
}

/// One length-r component.
#[derive(Clone, Debug)]
pub enum Comp {
    Exact(RatFun),
    Node(Arc<Node>),
}

impl Comp {
    pub fn constant(q: Rational) -> Self {
        Comp::Exact(RatFun::constant(q))
    }

    pub fn as_ratfun(&self) -> &RatFun {
        match self {
            Comp::Exact(f) => f,
            Comp::Node(_) => panic!("evaluation-backend component used where an exact value is required"),
        }
    }

    /// Constant value of a length-0 component.
    pub fn constant_value(&self) -> Rational {
        match self {
            Comp::Exact(f) => f.constant_value().expect("length-0 component is constant"),
            Comp::Node(_) => panic!("length-0 components are stored exactly"),
        }
    }
}

/// Group-like / Lie-like tag, read off the empty-word component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuClass {
    GroupLike,
    LieLike,
    General,
}

/// A bimould truncated at length L.
#[derive(Clone, Debug)]
pub struct Bimould {
    trunc: usize,
    backend: Backend,
    comps: Vec<Comp>, // comps[r] for r = 0..=trunc; comps[0] is a constant
}

/// A per-length recipe: one summand `coeff * [eps] * prod_j input_j(seq_j)`.
/// Both backends interpret recipes; they are how every operator is defined.
#[derive(Clone, Debug)]
pub struct TermSpec {
    pub coeff: Rational,
    pub eps: bool,
    pub factors: Vec<(Comp, Seq)>,
}

impl Default for TermSpec {
    fn default() -> Self {
        Self::new()
    }
}

impl TermSpec {
    pub fn new() -> Self {
        TermSpec { coeff: Rational::one(), eps: false, factors: Vec::new() }
    }

    pub fn with_coeff(c: Rational) -> Self {
        TermSpec { coeff: c, eps: false, factors: Vec::new() }
    }

    /// Append a factor; constants fold into the coefficient. Returns false
    /// when the term vanishes.
    pub fn push(&mut self, comp: &Comp, seq: Seq) -> bool {
        if seq.is_empty() {
            let c = comp.constant_value();
            if c.is_zero() {
                return false;
            }
            self.coeff = self.coeff.mul(&c);
            return true;
        }
        if let Comp::Exact(f) = comp {
            if let Some(c) = f.constant_value() {
                if c.is_zero() {
                    return false;
                }
                self.coeff = self.coeff.mul(&c);
                return true;
            }
        }
        self.factors.push((comp.clone(), seq));
        true
    }
}

/// Materialize a recipe as one component.
pub fn combine(backend: Backend, terms: Vec<TermSpec>) -> Comp {
    match backend {
        Backend::Exact => {
            let mut vals: Vec<RatFun> = Vec::with_capacity(terms.len());
            for t in terms {
                assert!(!t.eps, "dual-number terms require the evaluation backend");
                let mut prod = RatFun::constant(t.coeff);
                for (comp, seq) in &t.factors {
                    if prod.is_zero() {
                        break;
                    }
                    let f = comp.as_ratfun();
                    debug_assert!(f.max_position() <= seq.len());
                    let img = f
                        .substitute_linear(&|code| seq.form_for_code(code))
                        .expect("marker substitution cannot collapse a denominator");
                    prod = prod.mul(&img);
                }
                if !prod.is_zero() {
                    vals.push(prod);
                }
            }
            Comp::Exact(RatFun::sum(vals))
        }
        Backend::Eval => {
            let node_terms: Vec<NodeTerm> = terms
                .into_iter()
                .filter(|t| !t.coeff.is_zero())
                .map(|t| NodeTerm { coeff: t.coeff, eps: t.eps, factors: t.factors })
                .collect();
            Comp::Node(Arc::new(Node::new(NodeKind::Sum(node_terms))))
        }
    }
}

impl Bimould {
    pub fn from_components(trunc: usize, backend: Backend, comps: Vec<Comp>) -> Self {
        assert_eq!(comps.len(), trunc + 1);
        Bimould { trunc, backend, comps }
    }

    /// The mu-unit 1 = (1, 0, 0, ...).
    pub fn one(trunc: usize, backend: Backend) -> Self {
        let mut comps = vec![Comp::constant(Rational::one())];
        comps.extend((1..=trunc).map(|_| Comp::Exact(RatFun::zero())));
        Bimould { trunc, backend, comps }
    }

    pub fn zero(trunc: usize, backend: Backend) -> Self {
        let comps = (0..=trunc).map(|_| Comp::Exact(RatFun::zero())).collect();
        Bimould { trunc, backend, comps }
    }

    /// A length-1 bimould from its single component.
    pub fn of_length_one(trunc: usize, backend: Backend, f: RatFun) -> Self {
        let mut comps = vec![Comp::constant(Rational::zero())];
        for r in 1..=trunc {
            if r == 1 {
                comps.push(leaf(backend, f.clone()));
            } else {
                comps.push(Comp::Exact(RatFun::zero()));
            }
        }
        Bimould { trunc, backend, comps }
    }

    /// Build from closed-form components (length 0 value given separately).
    pub fn from_closed(
        trunc: usize,
        backend: Backend,
        c0: Rational,
        mut component: impl FnMut(usize) -> RatFun,
    ) -> Self {
        let mut comps = vec![Comp::constant(c0)];
        for r in 1..=trunc {
            comps.push(leaf(backend, component(r)));
        }
        Bimould { trunc, backend, comps }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn comp(&self, r: usize) -> &Comp {
        &self.comps[r]
    }

    pub fn set_comp(&mut self, r: usize, c: Comp) {
        self.comps[r] = c;
    }

    /// The empty-word value.
    pub fn constant_term(&self) -> Rational {
        self.comps[0].constant_value()
    }

    pub fn class(&self) -> MuClass {
        let c = self.constant_term();
        if c.is_one() {
            MuClass::GroupLike
        } else if c.is_zero() {
            MuClass::LieLike
        } else {
            MuClass::General
        }
    }

    pub fn require_group_like(&self, what: &str) -> Result<(), Error> {
        if self.class() != MuClass::GroupLike {
            return Err(Error::ClassError(format!("{what} requires a group-like bimould (empty-word value 1)")));
        }
        Ok(())
    }

    pub fn require_lie_like(&self, what: &str) -> Result<(), Error> {
        if self.class() != MuClass::LieLike {
            return Err(Error::ClassError(format!("{what} requires a Lie-like bimould (empty-word value 0)")));
        }
        Ok(())
    }

    fn check_compatible(&self, rhs: &Bimould) {
        assert_eq!(self.trunc, rhs.trunc, "bimould truncations differ");
        assert_eq!(self.backend, rhs.backend, "bimould backends differ");
    }

    // ---- Linear structure ----

    pub fn add(&self, rhs: &Bimould) -> Bimould {
        self.check_compatible(rhs);
        let mut comps = vec![Comp::constant(self.constant_term().add(&rhs.constant_term()))];
        for r in 1..=self.trunc {
            let mut lhs_term = TermSpec::new();
            let mut terms = Vec::new();
            if lhs_term.push(&self.comps[r], Seq::identity(r)) {
                terms.push(lhs_term);
            }
            let mut rhs_term = TermSpec::new();
            if rhs_term.push(&rhs.comps[r], Seq::identity(r)) {
                terms.push(rhs_term);
            }
            comps.push(combine(self.backend, terms));
        }
        Bimould::from_components(self.trunc, self.backend, comps)
    }

    pub fn sub(&self, rhs: &Bimould) -> Bimould {
        self.add(&rhs.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, q: &Rational) -> Bimould {
        let mut comps = vec![Comp::constant(self.constant_term().mul(q))];
        for r in 1..=self.trunc {
            let mut t = TermSpec::with_coeff(q.clone());
            let terms = if t.push(&self.comps[r], Seq::identity(r)) { vec![t] } else { vec![] };
            comps.push(combine(self.backend, terms));
        }
        Bimould::from_components(self.trunc, self.backend, comps)
    }

    /// Multiply each length-r part by r.
    pub fn der(&self) -> Bimould {
        let mut comps = vec![Comp::constant(Rational::zero())];
        for r in 1..=self.trunc {
            let mut t = TermSpec::with_coeff(Rational::from_int(r as i64));
            let terms = if t.push(&self.comps[r], Seq::identity(r)) { vec![t] } else { vec![] };
            comps.push(combine(self.backend, terms));
        }
        Bimould::from_components(self.trunc, self.backend, comps)
    }

    /// Projection onto the length-r part.
    pub fn leng(&self, r: usize) -> Bimould {
        assert!(r <= self.trunc);
        let mut out = Bimould::zero(self.trunc, self.backend);
        out.comps[r] = self.comps[r].clone();
        if r > 0 {
            out.comps[0] = Comp::constant(Rational::zero());
        }
        out
    }

    /// Restrict to a smaller truncation (drops higher components).
    pub fn truncate(&self, trunc: usize) -> Bimould {
        assert!(trunc <= self.trunc);
        Bimould {
            trunc,
            backend: self.backend,
            comps: self.comps[0..=trunc].to_vec(),
        }
    }
}

fn leaf(backend: Backend, f: RatFun) -> Comp {
    match backend {
        Backend::Exact => Comp::Exact(f),
        Backend::Eval => Comp::Node(Arc::new(Node::new(NodeKind::Leaf(f)))),
    }
}

// ---------------------------------------------------------------------------
// Unary operators
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Anti,
    Pari,
    Pus,
    Push,
    Mantar,
    Swap,
    Gantar,
}

/// Argument sequence and sign such that `op(A)(identity_r) = sign * A(seq)`.
fn unary_seq(op: UnaryOp, r: usize) -> (Rational, Seq) {
    let id = Seq::identity(r);
    let u = |i: usize| LinearForm::var(VarIndex::u(i));
    let v = |i: usize| LinearForm::var(VarIndex::v(i));
    let usum = |hi: usize| LinearForm::sum((1..=hi).map(&u).collect::<Vec<_>>().iter());
    match op {
        UnaryOp::Neg => (
            Rational::one(),
            Seq((1..=r).map(|i| Letter { u: u(i).neg(), v: v(i).neg() }).collect()),
        ),
        UnaryOp::Anti => (
            Rational::one(),
            Seq((0..r).map(|j| id.0[r - 1 - j].clone()).collect()),
        ),
        UnaryOp::Pari => (Rational::from_int(if r.is_multiple_of(2) { 1 } else { -1 }), id),
        UnaryOp::Mantar => {
            let (_, seq) = unary_seq(UnaryOp::Anti, r);
            (Rational::from_int(if (r + 1).is_multiple_of(2) { 1 } else { -1 }), seq)
        }
        UnaryOp::Pus => {
            // (u_r, u_1, ..., u_{r-1}; v_r, v_1, ..., v_{r-1})
            let mut letters = vec![Letter { u: u(r), v: v(r) }];
            letters.extend((1..r).map(|i| Letter { u: u(i), v: v(i) }));
            (Rational::one(), Seq(letters))
        }
        UnaryOp::Push => {
            // (-u_1-...-u_r, u_1, ..., u_{r-1}; -v_r, v_1-v_r, ..., v_{r-1}-v_r)
            let mut letters = vec![Letter { u: usum(r).neg(), v: v(r).neg() }];
            letters.extend((1..r).map(|i| Letter { u: u(i), v: v(i).sub(&v(r)) }));
            (Rational::one(), Seq(letters))
        }
        UnaryOp::Swap => {
            // (v_r, v_{r-1}-v_r, ..., v_1-v_2; u_1+...+u_r, ..., u_1+u_2, u_1)
            let letters = (1..=r)
                .map(|j| Letter {
                    u: if j == 1 { v(r) } else { v(r - j + 1).sub(&v(r - j + 2)) },
                    v: usum(r - j + 1),
                })
                .collect();
            (Rational::one(), Seq(letters))
        }
        UnaryOp::Gantar => unreachable!("gantar is handled at the bimould level"),
    }
}

/// Apply a unary operator. `Gantar` is invmu . pari . anti and needs a
/// group-like input; the others are componentwise reindexings.
pub fn unary(a: &Bimould, op: UnaryOp) -> Result<Bimould, Error> {
    if op == UnaryOp::Gantar {
        a.require_group_like("gantar")?;
        return invmu(&unary(&unary(a, UnaryOp::Anti)?, UnaryOp::Pari)?);
    }
    let c0 = match op {
        UnaryOp::Mantar => a.constant_term().neg(),
        _ => a.constant_term(),
    };
    let mut comps = vec![Comp::constant(c0)];
    for r in 1..=a.trunc() {
        let (sign, seq) = unary_seq(op, r);
        let mut t = TermSpec::with_coeff(sign);
        let terms = if t.push(a.comp(r), seq) { vec![t] } else { vec![] };
        comps.push(combine(a.backend(), terms));
    }
    Ok(Bimould::from_components(a.trunc(), a.backend(), comps))
}

/// swap . A . swap-style compositions appear constantly; a small helper.
pub fn unary_chain(a: &Bimould, ops: &[UnaryOp]) -> Result<Bimould, Error> {
    let mut cur = a.clone();
    for &op in ops {
        cur = unary(&cur, op)?;
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// mu, lu, invmu, gepar
// ---------------------------------------------------------------------------

/// Terms of `mu(a, b)` at length r: sum over splits of the identity word.
pub fn mu_terms(a: &Bimould, b: &Bimould, r: usize) -> Vec<TermSpec> {
    let id = Seq::identity(r);
    let mut terms = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let mut t = TermSpec::new();
        if !t.push(a.comp(i), Seq(id.slice(0..i).to_vec())) {
            continue;
        }
        if !t.push(b.comp(r - i), Seq(id.slice(i..r).to_vec())) {
            continue;
        }
        terms.push(t);
    }
    terms
}

/// The uninflected product.
pub fn mu(a: &Bimould, b: &Bimould) -> Bimould {
    a.check_compatible(b);
    let mut comps = vec![Comp::constant(a.constant_term().mul(&b.constant_term()))];
    for r in 1..=a.trunc() {
        comps.push(combine(a.backend(), mu_terms(a, b, r)));
    }
    Bimould::from_components(a.trunc(), a.backend(), comps)
}

/// mu of several factors, left to right.
pub fn mu_many(factors: &[&Bimould]) -> Bimould {
    assert!(!factors.is_empty());
    let mut acc = factors[0].clone();
    for b in &factors[1..] {
        acc = mu(&acc, b);
    }
    acc
}

/// The mu-commutator.
pub fn lu(a: &Bimould, b: &Bimould) -> Bimould {
    mu(a, b).sub(&mu(b, a))
}

/// Inverse for mu, solved length by length. Requires a group-like input.
pub fn invmu(a: &Bimould) -> Result<Bimould, Error> {
    a.require_group_like("invmu")?;
    let mut x = Bimould::one(a.trunc(), a.backend());
    for r in 1..=a.trunc() {
        let id = Seq::identity(r);
        let mut terms = Vec::with_capacity(r);
        for k in 1..=r {
            let mut t = TermSpec::with_coeff(Rational::from_int(-1));
            if !t.push(a.comp(k), Seq(id.slice(0..k).to_vec())) {
                continue;
            }
            if !t.push(x.comp(r - k), Seq(id.slice(k..r).to_vec())) {
                continue;
            }
            terms.push(t);
        }
        x.set_comp(r, combine(a.backend(), terms));
    }
    Ok(x)
}

/// gepar(A) = mu(anti(swap(A)), swap(A)).
pub fn gepar(a: &Bimould) -> Bimould {
    let s = unary(a, UnaryOp::Swap).expect("swap is total");
    let anti_s = unary(&s, UnaryOp::Anti).expect("anti is total");
    mu(&anti_s, &s)
}

// ---------------------------------------------------------------------------
// Random bimoulds
// ---------------------------------------------------------------------------

/// Deterministic random bimould: component r is a sparse polynomial of total
/// degree <= `degree_bound` in u_1..u_r, v_1..v_r with integer coefficients
/// in [-9, 9]; the empty-word value follows the class.
pub fn random_bimould(
    seed: u64,
    trunc: usize,
    class: MuClass,
    degree_bound: u32,
    backend: Backend,
) -> Bimould {
    let mut rng = SplitMix64::new(seed).fork(0x62696d75);
    let c0 = match class {
        MuClass::GroupLike => Rational::one(),
        MuClass::LieLike => Rational::zero(),
        MuClass::General => Rational::from_int(rng.int_in(-9, 9)),
    };
    let mut comps = vec![Comp::constant(c0)];
    for r in 1..=trunc {
        let nterms = 2 + rng.below(3) as usize;
        let mut p = Polynomial::zero();
        for _ in 0..nterms {
            let deg = rng.below(degree_bound as u64 + 1) as u32;
            let mut pairs = Vec::new();
            for _ in 0..deg {
                let pos = 1 + rng.below(r as u64) as usize;
                let axis_u = rng.below(2) == 0;
                let var = if axis_u { VarIndex::u(pos) } else { VarIndex::v(pos) };
                pairs.push((var.code(), 1u32));
            }
            let mut coeff = rng.int_in(-9, 9);
            if coeff == 0 {
                coeff = 1;
            }
            p.add_term(
                crate::ratfun::Monomial::from_pairs(pairs),
                Rational::from_int(coeff),
            );
        }
        comps.push(leaf(backend, RatFun::from_poly(p)));
    }
    Bimould::from_components(trunc, backend, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::ratfun_string;

    fn polar_u_unit(trunc: usize) -> Bimould {
        let f = RatFun::inv_linear(&LinearForm::var(VarIndex::u(1))).unwrap();
        Bimould::of_length_one(trunc, Backend::Exact, f)
    }

    #[test]
    fn markers_match_their_defining_displays() {
        let id = Seq::identity(2);
        let alpha = &id.0[0..1];
        let beta = &id.0[1..2];
        // UpperLeft((w1), (w2)) = ((u1+u2; v2))
        let ul = upper_left(alpha, beta);
        assert_eq!(ul[0].u, LinearForm::var(VarIndex::u(1)).add(&LinearForm::var(VarIndex::u(2))));
        assert_eq!(ul[0].v, LinearForm::var(VarIndex::v(2)));
        // LowerRight((w1), (w2)) = ((u1; v1-v2))
        let lr = lower_right(alpha, beta);
        assert_eq!(lr[0].u, LinearForm::var(VarIndex::u(1)));
        assert_eq!(lr[0].v, LinearForm::var(VarIndex::v(1)).sub(&LinearForm::var(VarIndex::v(2))));
        // Empty context leaves the target; empty target gives the empty word.
        assert_eq!(upper_right(&[], beta), Vec::<Letter>::new());
        assert_eq!(upper_left(&[], beta), beta.to_vec());
    }

    #[test]
    fn mu_unit_and_length_one_expansion() {
        let e = polar_u_unit(3);
        let one = Bimould::one(3, Backend::Exact);
        let prod = mu(&one, &e);
        for r in 0..=3 {
            assert_eq!(prod.comp(r).as_ratfun(), e.comp(r).as_ratfun());
        }
        // mu(E, E) concentrates in length 2: 1/(u1*u2).
        let sq = mu(&e, &e);
        assert!(sq.comp(1).as_ratfun().is_zero());
        assert_eq!(ratfun_string(sq.comp(2).as_ratfun()), "1 / (u1*u2)");
        assert!(sq.comp(3).as_ratfun().is_zero());
    }

    #[test]
    fn invmu_solves_both_sides() {
        let a = random_bimould(11, 4, MuClass::GroupLike, 2, Backend::Exact);
        let x = invmu(&a).unwrap();
        let left = mu(&x, &a);
        let right = mu(&a, &x);
        let one = Bimould::one(4, Backend::Exact);
        for r in 0..=4 {
            assert_eq!(left.comp(r).as_ratfun(), one.comp(r).as_ratfun(), "left inverse at length {r}");
            assert_eq!(right.comp(r).as_ratfun(), one.comp(r).as_ratfun(), "right inverse at length {r}");
        }
    }

    #[test]
    fn invmu_of_one_minus_unit_is_geometric() {
        // invmu(1 - E) has component r = E(w_1)...E(w_r).
        let trunc = 4;
        let e = polar_u_unit(trunc);
        let arg = Bimould::one(trunc, Backend::Exact).sub(&e);
        let z = invmu(&arg).unwrap();
        for r in 1..=trunc {
            let mut expect = RatFun::one();
            for i in 1..=r {
                expect = expect.mul(&RatFun::inv_linear(&LinearForm::var(VarIndex::u(i))).unwrap());
            }
            assert_eq!(z.comp(r).as_ratfun(), &expect);
        }
    }

    #[test]
    fn unary_push_length_one_is_neg() {
        let a = random_bimould(5, 3, MuClass::General, 2, Backend::Exact);
        let p = unary(&a, UnaryOp::Push).unwrap();
        let n = unary(&a, UnaryOp::Neg).unwrap();
        assert_eq!(p.comp(1).as_ratfun(), n.comp(1).as_ratfun());
    }

    #[test]
    fn swap_is_involutive_and_pus_has_order_r() {
        let a = random_bimould(7, 4, MuClass::General, 2, Backend::Exact);
        let ss = unary_chain(&a, &[UnaryOp::Swap, UnaryOp::Swap]).unwrap();
        for r in 0..=4 {
            assert_eq!(ss.comp(r).as_ratfun(), a.comp(r).as_ratfun(), "swap^2 at {r}");
        }
        // pus cycles each length-r component with period r.
        for r in 1..=4usize {
            let mut cur = a.leng(r);
            for _ in 0..r {
                cur = unary(&cur, UnaryOp::Pus).unwrap();
            }
            assert_eq!(cur.comp(r).as_ratfun(), a.comp(r).as_ratfun(), "pus^{r} at {r}");
        }
    }

    #[test]
    fn mantar_of_mu_exchanges_factors() {
        // mantar = -(pari . anti) and anti reverses the product order, so
        // mantar(mu(A,B)) = -mu(mantar(B), mantar(A)).
        let a = random_bimould(21, 3, MuClass::General, 2, Backend::Exact);
        let b = random_bimould(22, 3, MuClass::General, 2, Backend::Exact);
        let lhs = unary(&mu(&a, &b), UnaryOp::Mantar).unwrap();
        let rhs = mu(
            &unary(&b, UnaryOp::Mantar).unwrap(),
            &unary(&a, UnaryOp::Mantar).unwrap(),
        )
        .scale(&Rational::from_int(-1));
        for r in 0..=3 {
            assert_eq!(lhs.comp(r).as_ratfun(), rhs.comp(r).as_ratfun(), "length {r}");
        }
    }

    #[test]
    fn lu_is_an_antisymmetric_bracket_with_jacobi() {
        let a = random_bimould(31, 3, MuClass::General, 2, Backend::Exact);
        let b = random_bimould(32, 3, MuClass::General, 2, Backend::Exact);
        let c = random_bimould(33, 3, MuClass::General, 2, Backend::Exact);
        for r in 0..=3 {
            assert!(lu(&a, &a).comp(r).as_ratfun().is_zero());
            assert!(lu(&a, &b).add(&lu(&b, &a)).comp(r).as_ratfun().is_zero());
        }
        let jac = lu(&lu(&a, &b), &c)
            .add(&lu(&lu(&b, &c), &a))
            .add(&lu(&lu(&c, &a), &b));
        for r in 0..=3 {
            assert!(jac.comp(r).as_ratfun().is_zero(), "Jacobi at length {r}");
        }
    }

    #[test]
    fn leng_parts_reassemble() {
        let a = random_bimould(34, 3, MuClass::General, 2, Backend::Exact);
        let mut sum = a.leng(0);
        for r in 1..=3 {
            sum = sum.add(&a.leng(r));
        }
        for r in 0..=3 {
            assert_eq!(sum.comp(r).as_ratfun(), a.comp(r).as_ratfun());
        }
        // A product of two length-1 bimoulds is its own length-2 part.
        let e = polar_u_unit(3);
        let sq = mu(&e, &e);
        for r in 0..=3 {
            assert_eq!(sq.leng(2).comp(r).as_ratfun(), sq.comp(r).as_ratfun());
        }
    }

    #[test]
    fn der_is_a_mu_derivation_and_gepar_fixes_one() {
        let a = random_bimould(23, 3, MuClass::General, 2, Backend::Exact);
        let b = random_bimould(24, 3, MuClass::General, 2, Backend::Exact);
        let lhs = mu(&a, &b).der();
        let rhs = mu(&a.der(), &b).add(&mu(&a, &b.der()));
        for r in 0..=3 {
            assert_eq!(lhs.comp(r).as_ratfun(), rhs.comp(r).as_ratfun(), "length {r}");
        }
        assert!(Bimould::one(2, Backend::Exact).der().comp(1).as_ratfun().is_zero());
        let one = Bimould::one(3, Backend::Exact);
        let g = gepar(&one);
        assert!(g.constant_term().is_one());
        for r in 1..=3 {
            assert!(g.comp(r).as_ratfun().is_zero());
        }
    }

    #[test]
    fn random_bimoulds_are_seed_deterministic() {
        let a = random_bimould(99, 3, MuClass::LieLike, 2, Backend::Exact);
        let b = random_bimould(99, 3, MuClass::LieLike, 2, Backend::Exact);
        for r in 0..=3 {
            assert_eq!(a.comp(r).as_ratfun(), b.comp(r).as_ratfun());
        }
        assert_eq!(a.class(), MuClass::LieLike);
        assert_eq!(
            random_bimould(1, 2, MuClass::GroupLike, 2, Backend::Exact).class(),
            MuClass::GroupLike
        );
    }
}
