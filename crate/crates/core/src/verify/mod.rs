//! Named theorem checks, identity-testing strategies, and the report layer.
//!
//! Every identity the engine guarantees is reachable through exactly one
//! check name in [`checks::CHECKS`]; `run_check` executes one of them and
//! produces a deterministic, machine-readable report.

pub mod checks;
pub mod identity;
pub mod report;
pub mod shuffle;

pub use checks::{find_check, push_neutral_predicate, shuffle_predicate, CheckDef, Ctx, CHECKS};
pub use identity::{replay_witness, Tester};
pub use report::{backend_name, CheckReport, CheckStatus, LengthStat, Witness};
pub use shuffle::{shuffle, shuffle_antipode_vanishes, shuffle_seqs};

use crate::bimould::{Backend, Bimould};
use crate::error::Error;
use crate::scalar::PrimeField;
use crate::units::unit_by_spec;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

fn predicate_holds(
    a: &Bimould,
    points: usize,
    seed: u64,
    body: impl FnOnce(&mut Tester) -> Result<(), Error>,
) -> Result<bool, Error> {
    let field = PrimeField::default_mersenne();
    let mut tester = Tester::new(a.backend(), field, a.trunc(), points, seed);
    body(&mut tester)?;
    Ok(!tester.failed())
}

/// A(w # w') = A(w) A(w') over all splits up to the truncation.
pub fn is_symmetral(a: &Bimould, points: usize, seed: u64) -> Result<bool, Error> {
    predicate_holds(a, points, seed, |t| shuffle_predicate(t, "symmetral", a, true))
}

/// A(w # w') = 0 over all splits up to the truncation.
pub fn is_alternal(a: &Bimould, points: usize, seed: u64) -> Result<bool, Error> {
    predicate_holds(a, points, seed, |t| shuffle_predicate(t, "alternal", a, false))
}

/// The push-iterate sums vanish at every length up to the truncation.
pub fn is_push_neutral(a: &Bimould, points: usize, seed: u64) -> Result<bool, Error> {
    predicate_holds(a, points, seed, |t| push_neutral_predicate(t, "push-neutral", a))
}

/// Everything needed to run one named check reproducibly.
#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub name: String,
    pub unit: String,
    pub backend: Backend,
    /// Override for the catalogue's default truncation.
    pub max_length: Option<usize>,
    pub points: usize,
    pub seed: u64,
    /// Override for the evaluation modulus.
    pub prime: Option<u64>,
}

impl CheckSpec {
    pub fn new(name: impl Into<String>) -> Self {
        CheckSpec {
            name: name.into(),
            unit: "polar-u".into(),
            backend: Backend::Exact,
            max_length: None,
            points: 16,
            seed: 1,
            prime: None,
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_length(mut self, len: usize) -> Self {
        self.max_length = Some(len);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = unit.into();
        self
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }
}

fn field_for(spec: &CheckSpec) -> Result<PrimeField, Error> {
    match spec.prime {
        Some(p) => PrimeField::new(p),
        None => Ok(PrimeField::default_mersenne()),
    }
}

/// Run one check with a zeroed clock; byte-identical output given one spec.
pub fn run_check_timeless(spec: &CheckSpec) -> Result<CheckReport, Error> {
    let def = find_check(&spec.name).ok_or_else(|| Error::UnknownCheck(spec.name.clone()))?;
    let supported = match spec.backend {
        Backend::Exact => def.exact,
        Backend::Eval => def.eval,
    };
    let field = field_for(spec)?;
    let max_length = spec.max_length.unwrap_or(match spec.backend {
        Backend::Exact => def.exact_len,
        Backend::Eval => def.eval_len,
    });
    let unit = unit_by_spec(&spec.unit)?;
    let mut report = CheckReport {
        check: spec.name.clone(),
        unit: spec.unit.clone(),
        backend: spec.backend,
        max_length,
        points: spec.points,
        seed: spec.seed,
        status: CheckStatus::Pass,
        per_length: vec![LengthStat::default(); max_length],
        wall_ms: 0,
        version: ENGINE_VERSION.to_string(),
    };
    if !supported {
        report.status = CheckStatus::Skipped(format!(
            "{} does not run under the {} backend",
            def.name,
            backend_name(spec.backend)
        ));
        return Ok(report);
    }
    let mut ctx = Ctx {
        unit,
        backend: spec.backend,
        trunc: max_length,
        points: spec.points,
        seed: spec.seed,
        field,
        tester: Tester::new(spec.backend, field, max_length, spec.points, spec.seed),
    };
    match (def.run)(&mut ctx) {
        Ok(()) => {
            report.per_length = ctx.tester.per_length.clone();
            report.status = match ctx.tester.failure {
                None => CheckStatus::Pass,
                Some(w) => CheckStatus::Fail(w),
            };
        }
        Err(e) => {
            report.per_length = ctx.tester.per_length.clone();
            report.status = CheckStatus::Fail(Witness {
                identity: format!("runtime error: {e}"),
                length: 1,
                point: Vec::new(),
                lhs: String::new(),
                rhs: String::new(),
            });
        }
    }
    Ok(report)
}

/// Run one check with real wall-clock timing.
pub fn run_check(spec: &CheckSpec) -> Result<CheckReport, Error> {
    let started = std::time::Instant::now();
    let mut report = run_check_timeless(spec)?;
    report.wall_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Run the whole catalogue in order. Checks that do not support the requested
/// backend run under their supported one instead of being skipped.
pub fn run_all(template: &CheckSpec) -> Result<Vec<CheckReport>, Error> {
    let mut out = Vec::with_capacity(CHECKS.len());
    for def in CHECKS {
        let mut spec = template.clone();
        spec.name = def.name.to_string();
        let supported = match spec.backend {
            Backend::Exact => def.exact,
            Backend::Eval => def.eval,
        };
        if !supported {
            spec.backend = if def.exact { Backend::Exact } else { Backend::Eval };
            // Length overrides are tied to the requested backend; drop them
            // when falling back.
            spec.max_length = None;
        }
        out.push(run_check(&spec)?);
    }
    Ok(out)
}

/// Criterion sweep: every check runnable under both backends must report the
/// same status at a common small truncation.
pub fn cross_backend_coherence(unit: &str, trunc: usize, points: usize, seed: u64) -> Result<Vec<(String, CheckStatus, CheckStatus)>, Error> {
    let mut disagreements = Vec::new();
    for def in CHECKS {
        if !(def.exact && def.eval) {
            continue;
        }
        let base = CheckSpec::new(def.name)
            .with_unit(unit)
            .with_length(trunc)
            .with_seed(seed)
            .with_points(points);
        let ex = run_check_timeless(&base.clone().with_backend(Backend::Exact))?;
        let ev = run_check_timeless(&base.with_backend(Backend::Eval))?;
        let agree = matches!(
            (&ex.status, &ev.status),
            (CheckStatus::Pass, CheckStatus::Pass) | (CheckStatus::Fail(_), CheckStatus::Fail(_))
        );
        if !agree {
            disagreements.push((def.name.to_string(), ex.status, ev.status));
        }
    }
    Ok(disagreements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_is_an_error() {
        let spec = CheckSpec::new("no-such-check");
        assert!(matches!(run_check(&spec), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn unsupported_backend_is_skipped() {
        let spec = CheckSpec::new("tripartite").with_backend(Backend::Eval);
        let rep = run_check(&spec).unwrap();
        assert!(matches!(rep.status, CheckStatus::Skipped(_)));
    }

    #[test]
    fn timeless_reports_are_byte_identical() {
        let spec = CheckSpec::new("negpush").with_length(3).with_seed(7);
        let a = run_check_timeless(&spec).unwrap();
        let b = run_check_timeless(&spec).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.status.passed());
    }
}
