//! Identity testing: exact normal-form comparison or Schwartz-Zippel
//! evaluation at random prime-field points, with pole resampling and
//! replayable witnesses.

use super::report::{LengthStat, Witness};
use crate::bimould::eval::Evaluator;
use crate::bimould::{Backend, Bimould, Comp};
use crate::error::Error;
use crate::ratfun::{ratfun_string, FieldValue};
use crate::rng::SplitMix64;
use crate::scalar::{Fp, PrimeField};

const MAX_RESAMPLES: usize = 64;

/// Accumulates comparison results for one check run. Comparisons after the
/// first failure become no-ops, so check bodies need no early returns.
pub struct Tester {
    backend: Backend,
    trunc: usize,
    points: usize,
    rng: SplitMix64,
    evaluator: Evaluator<Fp>,
    pub per_length: Vec<LengthStat>,
    pub failure: Option<Witness>,
}

impl Tester {
    pub fn new(backend: Backend, field: PrimeField, trunc: usize, points: usize, seed: u64) -> Self {
        Tester {
            backend,
            trunc,
            points,
            rng: SplitMix64::new(seed).fork(0x74657374),
            evaluator: Evaluator::new(field),
            per_length: vec![LengthStat::default(); trunc],
            failure: None,
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn stat(&mut self, r: usize) -> &mut LengthStat {
        let idx = r.max(1).min(self.trunc) - 1;
        &mut self.per_length[idx]
    }

    fn record_mismatch(&mut self, w: Witness) {
        self.stat(w.length).mismatches += 1;
        if self.failure.is_none() {
            self.failure = Some(w);
        }
    }

    /// Record a scalar-level predicate (reported at length 1).
    pub fn assert_true(&mut self, what: &str, ok: bool) {
        if self.failed() {
            return;
        }
        self.stat(1).terms += 1;
        if !ok {
            self.record_mismatch(Witness {
                identity: what.to_string(),
                length: 1,
                point: Vec::new(),
                lhs: "false".into(),
                rhs: "true".into(),
            });
        }
    }

    /// Compare two components of length r under the active strategy.
    pub fn compare_comp(&mut self, what: &str, r: usize, lhs: &Comp, rhs: &Comp) -> Result<(), Error> {
        if self.failed() {
            return Ok(());
        }
        match self.backend {
            Backend::Exact => {
                self.stat(r).terms += 1;
                let l = lhs.as_ratfun();
                let h = rhs.as_ratfun();
                if l != h {
                    self.record_mismatch(Witness {
                        identity: what.to_string(),
                        length: r,
                        point: Vec::new(),
                        lhs: ratfun_string(l),
                        rhs: ratfun_string(h),
                    });
                }
                Ok(())
            }
            Backend::Eval => {
                for _ in 0..self.points {
                    let (point, lv, rv) = self.eval_pair_at_random(r, lhs, rhs)?;
                    self.stat(r).terms += 1;
                    if lv != rv {
                        self.record_mismatch(Witness {
                            identity: what.to_string(),
                            length: r,
                            point,
                            lhs: lv.residue().to_string(),
                            rhs: rv.residue().to_string(),
                        });
                        break;
                    }
                }
                Ok(())
            }
        }
    }

    fn eval_pair_at_random(
        &mut self,
        r: usize,
        lhs: &Comp,
        rhs: &Comp,
    ) -> Result<(Vec<u64>, Fp, Fp), Error> {
        let p = self.evaluator.field().modulus();
        for _ in 0..MAX_RESAMPLES {
            let residues: Vec<u64> = (0..2 * r).map(|_| self.rng.below(p)).collect();
            let point: Vec<Fp> = residues
                .iter()
                .map(|&x| Fp::from_residue(x, self.evaluator.field()))
                .collect();
            let lv = match self.evaluator.eval_comp(lhs, &point) {
                Ok(v) => v,
                Err(Error::DivisionByZero) => continue,
                Err(e) => return Err(e),
            };
            let rv = match self.evaluator.eval_comp(rhs, &point) {
                Ok(v) => v,
                Err(Error::DivisionByZero) => continue,
                Err(e) => return Err(e),
            };
            return Ok((residues, lv, rv));
        }
        Err(Error::ResampleExhausted { length: r, attempts: MAX_RESAMPLES })
    }

    /// Compare all components of two bimoulds (including the empty-word one).
    pub fn compare_bimoulds(&mut self, what: &str, lhs: &Bimould, rhs: &Bimould) -> Result<(), Error> {
        if self.failed() {
            return Ok(());
        }
        assert_eq!(lhs.trunc(), rhs.trunc(), "comparing different truncations");
        if lhs.constant_term() != rhs.constant_term() {
            self.record_mismatch(Witness {
                identity: format!("{what} (empty word)"),
                length: 1,
                point: Vec::new(),
                lhs: lhs.constant_term().to_string(),
                rhs: rhs.constant_term().to_string(),
            });
            return Ok(());
        }
        for r in 1..=lhs.trunc().min(self.trunc) {
            self.compare_comp(what, r, lhs.comp(r), rhs.comp(r))?;
        }
        Ok(())
    }

    /// Check that a bimould is identically zero up to the truncation.
    pub fn compare_to_zero(&mut self, what: &str, a: &Bimould) -> Result<(), Error> {
        let zero = Bimould::zero(a.trunc(), a.backend());
        self.compare_bimoulds(what, a, &zero)
    }

    /// Expect two bimoulds to differ somewhere (used by if-and-only-if
    /// checks); records a failure when they agree everywhere tested.
    pub fn expect_differs(&mut self, what: &str, lhs: &Bimould, rhs: &Bimould) -> Result<(), Error> {
        if self.failed() {
            return Ok(());
        }
        let mut probe = Tester::new(
            self.backend,
            *self.evaluator.field(),
            self.trunc,
            self.points,
            self.rng.next_u64(),
        );
        probe.compare_bimoulds(what, lhs, rhs)?;
        self.stat(1).terms += 1;
        if probe.failure.is_none() {
            self.record_mismatch(Witness {
                identity: format!("{what} (expected a difference)"),
                length: 1,
                point: Vec::new(),
                lhs: "equal".into(),
                rhs: "different".into(),
            });
        }
        Ok(())
    }

    /// Dual-number comparison at random points, for the linearization checks.
    pub fn compare_comp_dual<V: FieldValue>(
        &mut self,
        what: &str,
        r: usize,
        lhs: &Comp,
        rhs: &Comp,
        ev: &mut Evaluator<V>,
    ) -> Result<(), Error> {
        if self.failed() {
            return Ok(());
        }
        let p = ev.field().modulus();
        'points: for _ in 0..self.points {
            for _ in 0..MAX_RESAMPLES {
                let residues: Vec<u64> = (0..2 * r).map(|_| self.rng.below(p)).collect();
                let point: Vec<V> = residues.iter().map(|&x| V::from_residue(x, ev.field())).collect();
                let lv = match ev.eval_comp(lhs, &point) {
                    Ok(v) => v,
                    Err(Error::DivisionByZero) => continue,
                    Err(e) => return Err(e),
                };
                let rv = match ev.eval_comp(rhs, &point) {
                    Ok(v) => v,
                    Err(Error::DivisionByZero) => continue,
                    Err(e) => return Err(e),
                };
                self.stat(r).terms += 1;
                if lv != rv {
                    self.record_mismatch(Witness {
                        identity: what.to_string(),
                        length: r,
                        point: residues,
                        lhs: format!("{lv:?}"),
                        rhs: format!("{rv:?}"),
                    });
                    return Ok(());
                }
                continue 'points;
            }
            return Err(Error::ResampleExhausted { length: r, attempts: MAX_RESAMPLES });
        }
        Ok(())
    }
}

/// Re-evaluate both sides of a witness at its recorded point; returns the two
/// rendered values so a caller can confirm the mismatch replays.
pub fn replay_witness(
    field: PrimeField,
    lhs: &Comp,
    rhs: &Comp,
    witness: &Witness,
) -> Result<(String, String), Error> {
    let mut ev: Evaluator<Fp> = Evaluator::new(field);
    let point: Vec<Fp> = witness.point.iter().map(|&x| Fp::from_residue(x, &field)).collect();
    let lv = ev.eval_comp(lhs, &point)?;
    let rv = ev.eval_comp(rhs, &point)?;
    Ok((lv.residue().to_string(), rv.residue().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimould::{mu, random_bimould, MuClass};

    #[test]
    fn exact_compare_catches_differences() {
        let a = random_bimould(1, 3, MuClass::General, 2, Backend::Exact);
        let b = random_bimould(2, 3, MuClass::General, 2, Backend::Exact);
        let mut t = Tester::new(Backend::Exact, PrimeField::default_mersenne(), 3, 0, 5);
        t.compare_bimoulds("a vs a", &a, &a).unwrap();
        assert!(!t.failed());
        t.compare_bimoulds("a vs b", &a, &b).unwrap();
        assert!(t.failed());
    }

    #[test]
    fn schwartz_zippel_is_deterministic_and_replayable() {
        let a = random_bimould(10, 3, MuClass::General, 2, Backend::Eval);
        let b = random_bimould(11, 3, MuClass::General, 2, Backend::Eval);
        let lhs = mu(&a, &b);
        let rhs = mu(&b, &a); // mu is noncommutative: expect a mismatch
        let field = PrimeField::default_mersenne();
        let run = |seed: u64| {
            let mut t = Tester::new(Backend::Eval, field, 3, 8, seed);
            t.compare_bimoulds("mu commutator", &lhs, &rhs).unwrap();
            t.failure
        };
        let w1 = run(42).expect("mu(a,b) != mu(b,a)");
        let w2 = run(42).expect("deterministic rerun");
        assert_eq!(w1, w2);
        let (lv, rv) = replay_witness(field, lhs.comp(w1.length), rhs.comp(w1.length), &w1).unwrap();
        assert_eq!(lv, w1.lhs);
        assert_eq!(rv, w1.rhs);
        assert_ne!(lv, rv);
    }
}
