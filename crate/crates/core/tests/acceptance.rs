//! Acceptance suite: the engine's exit criteria, one test per criterion,
//! each printed as a pass/fail line with its time budget.
//!
//! Exact means rational-function normal-form equality; eval means zero
//! mismatches over 16 Schwartz-Zippel points per length at a 61-bit prime
//! modulus. Run with `cargo test --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::time::Instant;

use flexion_core::bimould::Backend;
use flexion_core::ratfun::{parse_ratfun, Polynomial, RatFun, VarIndex};
use flexion_core::scalar::Rational;
use flexion_core::units::{push_neutrality_check, verify_unit, FlexionUnit, UnitCheck};
use flexion_core::verify::{
    cross_backend_coherence, replay_witness, run_check_timeless, CheckSpec, CheckStatus,
};

fn criterion(number: u32, label: &str, budget_ms: u64, body: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let outcome = body();
    let elapsed = started.elapsed().as_millis() as u64;
    match &outcome {
        Ok(()) => println!("criterion {number} ({label}): PASS in {elapsed} ms [budget {budget_ms} ms]"),
        Err(why) => println!("criterion {number} ({label}): FAIL in {elapsed} ms: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {number} failed: {why}");
    }
    assert!(
        elapsed <= budget_ms,
        "criterion {number} exceeded its {budget_ms} ms budget ({elapsed} ms)"
    );
}

fn expect_pass(spec: &CheckSpec) -> Result<(), String> {
    let rep = run_check_timeless(spec).map_err(|e| format!("{}: {e}", spec.name))?;
    match rep.status {
        CheckStatus::Pass => Ok(()),
        CheckStatus::Fail(w) => Err(format!(
            "{} [{} backend, L={}]: {} at length {} (lhs {}, rhs {})",
            spec.name,
            flexion_core::verify::backend_name(rep.backend),
            rep.max_length,
            w.identity,
            w.length,
            w.lhs,
            w.rhs
        )),
        CheckStatus::Skipped(reason) => Err(format!("{} unexpectedly skipped: {reason}", spec.name)),
    }
}

fn spec(name: &str, backend: Backend, len: usize, unit: &str) -> CheckSpec {
    CheckSpec::new(name)
        .with_backend(backend)
        .with_length(len)
        .with_unit(unit)
        .with_seed(7)
}

#[test]
fn criterion_1_unit_gate() {
    criterion(1, "unit gate", 5_000, || {
        for unit in [FlexionUnit::polar_u(), FlexionUnit::polar_v()] {
            if !verify_unit(unit.component()).is_unit() {
                return Err(format!("{} failed validation", unit.name()));
            }
            if !push_neutrality_check(unit.component(), 6) {
                return Err(format!("{} failed push-neutrality up to n = 6", unit.name()));
            }
        }
        // The deliberately broken candidate fails with a nonzero residual.
        let broken = RatFun::from_poly(Polynomial::var(VarIndex::u(1)));
        match verify_unit(&broken) {
            UnitCheck::FailsTripartite(residual) if !residual.is_zero() => {}
            other => return Err(format!("u1 should fail tripartite with a witness, got {other:?}")),
        }
        if push_neutrality_check(&broken, 2) {
            return Err("u1 should not be push-neutral".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_2_primary_bimould_laws() {
    criterion(2, "primary-bimould laws, exact L=6", 60_000, || {
        for unit in ["polar-u", "polar-v"] {
            expect_pass(&spec("es-symmetral", Backend::Exact, 6, unit))?;
            expect_pass(&spec("ez-es-relations", Backend::Exact, 6, unit))?;
            expect_pass(&spec("es-split", Backend::Exact, 6, unit))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_3_re_family() {
    criterion(3, "re-family bracket and swappee formulas, exact", 120_000, || {
        for unit in ["polar-u", "polar-v"] {
            expect_pass(&spec("ari-re-family", Backend::Exact, 6, unit))?;
            expect_pass(&spec("dro-formula", Backend::Exact, 6, unit))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_4_operator_algebra() {
    let names = [
        "axit-derivation",
        "arit-antihom",
        "gaxit-two-forms",
        "gaxit-assoc",
        "gaxit-separation",
        "gaxit-multiplicativity",
        "dual-number-linearization",
    ];
    for name in names {
        criterion(4, &format!("operator algebra: {name}, eval L=4"), 60_000, || {
            expect_pass(&spec(name, Backend::Eval, 4, "polar-u"))
        });
    }
}

#[test]
fn criterion_5_fundamental_identity() {
    criterion(5, "fundamental identity with ras/rash variant", 120_000, || {
        expect_pass(&spec("fundamental-identity", Backend::Eval, 4, "polar-u"))?;
        expect_pass(&spec("fundamental-identity", Backend::Exact, 3, "polar-u"))
    });
}

#[test]
fn criterion_6_separation_lemma() {
    criterion(6, "separation lemma and supporting identities", 180_000, || {
        expect_pass(&spec("separation-lemma", Backend::Exact, 4, "polar-u"))?;
        expect_pass(&spec("separation-lemma", Backend::Eval, 5, "polar-u"))?;
        expect_pass(&spec("lemma-1195", Backend::Exact, 4, "polar-u"))?;
        expect_pass(&spec("lemma-1195", Backend::Eval, 5, "polar-u"))?;
        expect_pass(&spec("lemma-1197", Backend::Exact, 4, "polar-u"))?;
        expect_pass(&spec("lemma-1197", Backend::Eval, 5, "polar-u"))?;
        expect_pass(&spec("prop-244", Backend::Exact, 3, "polar-u"))?;
        expect_pass(&spec("prop-244", Backend::Eval, 4, "polar-u"))
    });
}

#[test]
fn criterion_7_secondary_bimould_theorems() {
    let cases: &[(&str, Backend, usize)] = &[
        ("slash-ess", Backend::Eval, 5),
        ("slash-dess", Backend::Eval, 5),
        ("crash-dess", Backend::Exact, 3),
        ("crash-dess", Backend::Eval, 5),
        ("crash-ess", Backend::Exact, 3),
        ("crash-ess", Backend::Eval, 5),
        ("gantar-doss", Backend::Eval, 5),
        ("gantar-ess", Backend::Eval, 5),
        ("gantar-dess", Backend::Eval, 5),
    ];
    for (name, backend, len) in cases {
        let label = format!(
            "secondary theorems: {name} {} L={len}",
            flexion_core::verify::backend_name(*backend)
        );
        criterion(7, &label, 300_000, || expect_pass(&spec(name, *backend, *len, "polar-u")));
    }
}

#[test]
fn criterion_8_giff_layer() {
    criterion(8, "formal-diffeomorphism layer, exact", 5_000, || {
        for name in ["giff-explog", "giff-compose", "giff-dilator", "diff-bracket", "giff-coproduct"] {
            expect_pass(&spec(name, Backend::Exact, 1, "polar-u"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_9_cross_backend_coherence() {
    criterion(9, "exact and eval strategies agree at L=3", 300_000, || {
        let disagreements = cross_backend_coherence("polar-u", 3, 8, 7).map_err(|e| e.to_string())?;
        if disagreements.is_empty() {
            Ok(())
        } else {
            Err(format!("status disagreements: {disagreements:?}"))
        }
    });
}

#[test]
fn criterion_10_determinism_and_witness_replay() {
    criterion(10, "byte-identical reports and witness replay", 120_000, || {
        // Byte-identical JSON across repeated runs, both backends.
        for (name, backend, len) in [
            ("gantar-doss", Backend::Eval, 4),
            ("separation-lemma", Backend::Exact, 3),
            ("fundamental-identity", Backend::Eval, 3),
        ] {
            let s = spec(name, backend, len, "polar-u");
            let a = run_check_timeless(&s).map_err(|e| e.to_string())?.to_json();
            let b = run_check_timeless(&s).map_err(|e| e.to_string())?.to_json();
            if a != b {
                return Err(format!("{name} reports differ between runs"));
            }
        }
        // A deliberate mismatch: es and ez differ at length 2, and the
        // witness point replays to the same values.
        let unit = FlexionUnit::polar_u();
        let es = flexion_core::units::primary(&unit, flexion_core::units::PrimaryKind::Es, 2, Backend::Eval);
        let ez = flexion_core::units::primary(&unit, flexion_core::units::PrimaryKind::Ez, 2, Backend::Eval);
        let field = flexion_core::scalar::PrimeField::default_mersenne();
        let mut tester = flexion_core::verify::Tester::new(Backend::Eval, field, 2, 16, 99);
        tester.compare_bimoulds("es vs ez", &es, &ez).map_err(|e| e.to_string())?;
        let witness = tester.failure.ok_or("es vs ez should mismatch at length 2")?;
        if witness.length != 2 {
            return Err(format!("expected mismatch at length 2, got {}", witness.length));
        }
        let (lhs, rhs) =
            replay_witness(field, es.comp(2), ez.comp(2), &witness).map_err(|e| e.to_string())?;
        if lhs != witness.lhs || rhs != witness.rhs {
            return Err("witness did not replay to the recorded values".into());
        }
        // Exact strategy reports the same mismatch with canonical forms.
        let es_x = flexion_core::units::primary(&unit, flexion_core::units::PrimaryKind::Es, 2, Backend::Exact);
        let ez_x = flexion_core::units::primary(&unit, flexion_core::units::PrimaryKind::Ez, 2, Backend::Exact);
        let mut tester_x = flexion_core::verify::Tester::new(Backend::Exact, field, 2, 0, 99);
        tester_x.compare_bimoulds("es vs ez", &es_x, &ez_x).map_err(|e| e.to_string())?;
        let wx = tester_x.failure.ok_or("exact comparison should mismatch")?;
        if wx.lhs != "1 / (u1^2 + u1*u2)" || wx.rhs != "1 / (u1*u2)" {
            return Err(format!("unexpected canonical witness: {} vs {}", wx.lhs, wx.rhs));
        }
        // The canonical text format round-trips through the parser.
        let reparsed = parse_ratfun(&wx.lhs).map_err(|e| e.to_string())?;
        if &reparsed != es_x.comp(2).as_ratfun() {
            return Err("canonical text did not round-trip".into());
        }
        let one = Rational::one();
        if es_x.constant_term() != one || ez_x.constant_term() != one {
            return Err("primary bimoulds are group-like".into());
        }
        Ok(())
    });
}
