//! Evaluation backend: components as deferred expression nodes.
//!
//! A node is either a closed-form rational function or a sum of products of
//! child components taken at marker-transformed points. Evaluation at a prime
//! field point is memoized on (node id, point); poles surface as
//! `DivisionByZero` so the caller can resample.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::{Comp, Seq};
use crate::error::Error;
use crate::ratfun::{FieldValue, RatFun};
use crate::scalar::{PrimeField, Rational};

static NODE_IDS: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
pub struct Node {
    id: u64,
    kind: NodeKind,
}

#[derive(Debug)]
pub enum NodeKind {
    Leaf(RatFun),
    Sum(Vec<NodeTerm>),
}

/// `coeff * eps? * prod_j factor_j(seq_j)`.
#[derive(Debug)]
pub struct NodeTerm {
    pub coeff: Rational,
    pub eps: bool,
    pub factors: Vec<(Comp, Seq)>,
}

impl Node {
    pub fn new(kind: NodeKind) -> Self {
        Node { id: NODE_IDS.fetch_add(1, Ordering::Relaxed), kind }
    }

    pub fn id(&self) -> u64 {
        self.id
    }
}

/// A memoizing evaluator over one field-value type. Each worker owns its own
/// evaluator, so results are independent of any scheduling.
pub struct Evaluator<V: FieldValue> {
    field: PrimeField,
    memo: HashMap<(u64, Vec<V>), V>,
}

impl<V: FieldValue> Evaluator<V> {
    pub fn new(field: PrimeField) -> Self {
        Evaluator { field, memo: HashMap::new() }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn memo_entries(&self) -> usize {
        self.memo.len()
    }

    /// Evaluate a length-r component at a point of 2r code-ordered values.
    pub fn eval_comp(&mut self, comp: &Comp, point: &[V]) -> Result<V, Error> {
        match comp {
            Comp::Exact(f) => f.eval(point, &self.field),
            Comp::Node(node) => {
                let key = (node.id, point.to_vec());
                if let Some(v) = self.memo.get(&key) {
                    return Ok(*v);
                }
                let value = match &node.kind {
                    NodeKind::Leaf(f) => f.eval(point, &self.field)?,
                    NodeKind::Sum(terms) => {
                        let mut acc = V::zero(&self.field);
                        for term in terms {
                            let mut prod = V::from_rational(&term.coeff, &self.field)?;
                            if term.eps {
                                prod = prod.mul(V::eps(&self.field).ok_or_else(|| {
                                    Error::ClassError("dual-number term evaluated over a plain field".into())
                                })?);
                            }
                            for (child, seq) in &term.factors {
                                if prod.is_zero() {
                                    break;
                                }
                                let child_point = eval_seq(seq, point, &self.field);
                                prod = prod.mul(self.eval_comp(child, &child_point)?);
                            }
                            acc = acc.add(prod);
                        }
                        acc
                    }
                };
                self.memo.insert(key, value);
                Ok(value)
            }
        }
    }
}

/// Map a parent point through an argument sequence: letter i contributes the
/// child coordinates (u_i, v_i).
pub fn eval_seq<V: FieldValue>(seq: &Seq, point: &[V], field: &PrimeField) -> Vec<V> {
    let mut out = Vec::with_capacity(2 * seq.len());
    for letter in &seq.0 {
        out.push(letter.u.eval(point, field));
        out.push(letter.v.eval(point, field));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimould::{mu, random_bimould, Backend, MuClass};
    use crate::scalar::Fp;

    #[test]
    fn eval_matches_exact_on_mu() {
        let field = PrimeField::default_mersenne();
        let trunc = 3;
        let ae = random_bimould(3, trunc, MuClass::General, 2, Backend::Exact);
        let be = random_bimould(4, trunc, MuClass::General, 2, Backend::Exact);
        let av = random_bimould(3, trunc, MuClass::General, 2, Backend::Eval);
        let bv = random_bimould(4, trunc, MuClass::General, 2, Backend::Eval);
        let exact = mu(&ae, &be);
        let lazy = mu(&av, &bv);
        let mut ev = Evaluator::<Fp>::new(field);
        for r in 1..=trunc {
            let point: Vec<Fp> = (0..2 * r).map(|i| field.elem(100 + 7 * i as u64)).collect();
            let direct = exact.comp(r).as_ratfun().eval(&point, &field).unwrap();
            let lazy_v = ev.eval_comp(lazy.comp(r), &point).unwrap();
            assert_eq!(direct, lazy_v, "length {r}");
        }
        assert!(ev.memo_entries() > 0);
    }
}
