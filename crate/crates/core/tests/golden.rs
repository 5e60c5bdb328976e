//! Golden canonical forms of primary, secondary and re-family components.
//!
//! The low-length values are hand-checkable products of linear forms; the
//! secondary entries pin down regression values whose correctness is
//! enforced independently by the slash/crash/gantar checks.

use flexion_core::bimould::Backend;
use flexion_core::giff::{secondary, ReFamily, SecondaryKind};
use flexion_core::ratfun::{parse_ratfun, ratfun_string};
use flexion_core::units::{primary, unit_by_spec, PrimaryKind};

fn show_primary(kind: PrimaryKind, unit: &str, length: usize) -> String {
    let unit = unit_by_spec(unit).unwrap();
    let b = primary(&unit, kind, length, Backend::Exact);
    ratfun_string(b.comp(length).as_ratfun())
}

fn show_secondary(kind: SecondaryKind, unit: &str, length: usize) -> String {
    let unit = unit_by_spec(unit).unwrap();
    let b = secondary(&unit, kind, length, Backend::Exact).unwrap();
    ratfun_string(b.comp(length).as_ratfun())
}

#[test]
fn primary_components() {
    use PrimaryKind::*;
    let table: &[(PrimaryKind, &str, usize, &str)] = &[
        (Ez, "polar-u", 1, "1 / (u1)"),
        (Ez, "polar-u", 3, "1 / (u1*u2*u3)"),
        (Ez, "polar-v", 3, "1 / (v1*v2*v3)"),
        (Es, "polar-u", 2, "1 / (u1^2 + u1*u2)"),
        (Es, "polar-u", 3, "1 / (u1^3 + 2*u1^2*u2 + u1^2*u3 + u1*u2^2 + u1*u2*u3)"),
        (Es, "polar-v", 2, "1 / (v1*v2 - v2^2)"),
        (Es, "polar-v", 3, "1 / (v1*v2*v3 - v1*v3^2 - v2^2*v3 + v2*v3^2)"),
        (Oz, "polar-u", 2, "1 / (v1*v2)"),
        (Oz, "polar-v", 2, "1 / (u1*u2)"),
        (Os, "polar-u", 2, "1 / (v1*v2 - v2^2)"),
        (Os, "polar-v", 3, "1 / (u1^3 + 2*u1^2*u2 + u1^2*u3 + u1*u2^2 + u1*u2*u3)"),
    ];
    for (kind, unit, length, expect) in table {
        assert_eq!(&show_primary(*kind, unit, *length), expect, "{kind:?} {unit} {length}");
    }
}

#[test]
fn secondary_components() {
    use SecondaryKind::*;
    let table: &[(SecondaryKind, &str, usize, &str)] = &[
        (Ess, "polar-u", 2, "(u1 + 2*u2) / (12*u1^2*u2 + 12*u1*u2^2)"),
        (Ess, "polar-u", 3, "-1 / (24*u1^2*u3 + 24*u1*u2*u3)"),
        (Oss, "polar-u", 2, "(2*v1 - v2) / (12*v1^2*v2 - 12*v1*v2^2)"),
        (Dess, "polar-u", 2, "(u1 + 2*u2) / (12*u1^2*u2 + 12*u1*u2^2)"),
        (Doss, "polar-u", 2, "(2*v1 - v2) / (12*v1^2*v2 - 12*v1*v2^2)"),
    ];
    for (kind, unit, length, expect) in table {
        assert_eq!(&show_secondary(*kind, unit, *length), expect, "{kind:?} {unit} {length}");
    }
}

#[test]
fn re_family_components() {
    let unit = unit_by_spec("polar-u").unwrap();
    let fam = ReFamily::new(&unit, 2, Backend::Exact).unwrap();
    assert_eq!(ratfun_string(fam.re(2).comp(2).as_ratfun()), "(-u1 + u2) / (u1^2*u2 + u1*u2^2)");
    assert_eq!(ratfun_string(fam.dro(2).comp(2).as_ratfun()), "(v1 - 2*v2) / (v1^2*v2 - v1*v2^2)");
}

#[test]
fn symmetry_predicates_on_known_bimoulds() {
    use flexion_core::verify::{is_alternal, is_push_neutral, is_symmetral};
    let unit = unit_by_spec("polar-u").unwrap();
    let es = primary(&unit, PrimaryKind::Es, 4, Backend::Exact);
    assert!(is_symmetral(&es, 0, 1).unwrap());
    let fam = ReFamily::new(&unit, 3, Backend::Exact).unwrap();
    assert!(is_alternal(fam.re(2), 0, 1).unwrap());
    assert!(is_alternal(fam.re(3), 0, 1).unwrap());
    // es itself is not alternal, and ez is not symmetral.
    assert!(!is_alternal(&es, 0, 1).unwrap());
    let ez = primary(&unit, PrimaryKind::Ez, 4, Backend::Exact);
    assert!(!is_symmetral(&ez, 0, 1).unwrap());
    // mu-powers of the unit are push-neutral in positive lengths.
    assert!(is_push_neutral(&ez, 0, 1).unwrap());
    let not_neutral = flexion_core::bimould::random_bimould(
        3,
        3,
        flexion_core::bimould::MuClass::LieLike,
        2,
        Backend::Exact,
    );
    assert!(!is_push_neutral(&not_neutral, 0, 1).unwrap());
}

#[test]
fn golden_strings_reparse_to_the_same_functions() {
    let unit = unit_by_spec("polar-u").unwrap();
    for length in 1..=3 {
        let b = primary(&unit, PrimaryKind::Es, length, Backend::Exact);
        let f = b.comp(length).as_ratfun();
        assert_eq!(&parse_ratfun(&ratfun_string(f)).unwrap(), f);
    }
}
