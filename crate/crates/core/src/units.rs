//! Flexion units: validation (parity + tripartite), push-neutrality, the
//! built-in polar units, and the primary bimoulds ez/es/oz/os built from a
//! unit by their closed product formulas.

use crate::bimould::{mu_many, unary, Backend, Bimould, UnaryOp};
use crate::error::Error;
use crate::ratfun::{parse_ratfun, LinearForm, RatFun, VarIndex};
use crate::scalar::Rational;

fn u(i: usize) -> LinearForm {
    LinearForm::var(VarIndex::u(i))
}

fn v(i: usize) -> LinearForm {
    LinearForm::var(VarIndex::v(i))
}

fn usum(hi: usize) -> LinearForm {
    let forms: Vec<LinearForm> = (1..=hi).map(u).collect();
    LinearForm::sum(forms.iter())
}

/// Evaluate a one-letter function at (u-form; v-form).
fn at(f: &RatFun, uf: &LinearForm, vf: &LinearForm) -> RatFun {
    f.substitute_linear(&|code| {
        if code == VarIndex::u(1).code() {
            uf.clone()
        } else {
            vf.clone()
        }
    })
    .expect("unit substitution cannot collapse")
}

/// Outcome of validating a length-1 component as a flexion unit; failures
/// carry the nonzero residual as a witness.
#[derive(Clone, Debug)]
pub enum UnitCheck {
    IsUnit,
    FailsParity(RatFun),
    FailsTripartite(RatFun),
}

impl UnitCheck {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitCheck::IsUnit)
    }
}

/// Exact check of the parity condition and the tripartite identity.
pub fn verify_unit(f: &RatFun) -> UnitCheck {
    // Parity: E(u1; v1) + E(-u1; -v1) = 0.
    let parity = f.add(&at(f, &u(1).neg(), &v(1).neg()));
    if !parity.is_zero() {
        return UnitCheck::FailsParity(parity);
    }
    // Tripartite: E(w1)E(w2) = E(u1; v1-v2)E(u1+u2; v2) + E(u1+u2; v1)E(u2; v2-v1).
    let u12 = u(1).add(&u(2));
    let lhs = at(f, &u(1), &v(1)).mul(&at(f, &u(2), &v(2)));
    let rhs = at(f, &u(1), &v(1).sub(&v(2)))
        .mul(&at(f, &u12, &v(2)))
        .add(&at(f, &u12, &v(1)).mul(&at(f, &u(2), &v(2).sub(&v(1)))));
    let residual = lhs.sub(&rhs);
    if !residual.is_zero() {
        return UnitCheck::FailsTripartite(residual);
    }
    UnitCheck::IsUnit
}

/// A validated flexion unit together with its conjugate (the swappee, always
/// computed rather than user-supplied).
#[derive(Clone, Debug)]
pub struct FlexionUnit {
    name: String,
    component: RatFun,
    conjugate: RatFun,
}

impl FlexionUnit {
    /// Validate and wrap a length-1 component in the variables (u1, v1).
    pub fn new(name: impl Into<String>, component: RatFun) -> Result<Self, Error> {
        if component.max_position() > 1 {
            return Err(Error::UnitError("a unit component uses only u1 and v1".into()));
        }
        match verify_unit(&component) {
            UnitCheck::IsUnit => {}
            UnitCheck::FailsParity(w) => {
                return Err(Error::UnitError(format!(
                    "parity condition fails; residual {}",
                    crate::ratfun::ratfun_string(&w)
                )));
            }
            UnitCheck::FailsTripartite(w) => {
                return Err(Error::UnitError(format!(
                    "tripartite identity fails; residual {}",
                    crate::ratfun::ratfun_string(&w)
                )));
            }
        }
        // Conjugate: exchange the two variables.
        let conjugate = at(&component, &v(1), &u(1));
        Ok(FlexionUnit { name: name.into(), component, conjugate })
    }

    /// The u-polar unit 1/u1.
    pub fn polar_u() -> Self {
        Self::new("polar-u", RatFun::inv_linear(&u(1)).unwrap()).expect("polar-u is a unit")
    }

    /// The v-polar unit 1/v1.
    pub fn polar_v() -> Self {
        Self::new("polar-v", RatFun::inv_linear(&v(1)).unwrap()).expect("polar-v is a unit")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn component(&self) -> &RatFun {
        &self.component
    }

    pub fn conjugate(&self) -> &RatFun {
        &self.conjugate
    }

    /// The unit with the roles of E and O exchanged.
    pub fn conjugate_unit(&self) -> FlexionUnit {
        FlexionUnit {
            name: format!("{}-conjugate", self.name),
            component: self.conjugate.clone(),
            conjugate: self.component.clone(),
        }
    }

    /// The unit as a length-1 bimould.
    pub fn bimould(&self, trunc: usize, backend: Backend) -> Bimould {
        Bimould::of_length_one(trunc, backend, self.component.clone())
    }

    /// The conjugate as a length-1 bimould.
    pub fn conjugate_bimould(&self, trunc: usize, backend: Backend) -> Bimould {
        Bimould::of_length_one(trunc, backend, self.conjugate.clone())
    }
}

/// Resolve a CLI unit spec: `polar-u`, `polar-v`, or `custom:<path>` holding
/// one canonical-format rational function in (u1, v1).
pub fn unit_by_spec(spec: &str) -> Result<FlexionUnit, Error> {
    match spec {
        "polar-u" => Ok(FlexionUnit::polar_u()),
        "polar-v" => Ok(FlexionUnit::polar_v()),
        other => {
            if let Some(path) = other.strip_prefix("custom:") {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::UnitError(format!("cannot read {path}: {e}")))?;
                let component = parse_ratfun(text.trim())?;
                FlexionUnit::new(format!("custom:{path}"), component)
            } else {
                Err(Error::UnitError(format!(
                    "unknown unit '{other}' (expected polar-u, polar-v, or custom:<path>)"
                )))
            }
        }
    }
}

/// Push-neutrality of mu^n(E) for every n <= n_max; equivalent to E being a
/// flexion unit, and checked exactly on the closed product form.
pub fn push_neutrality_check(f: &RatFun, n_max: usize) -> bool {
    for n in 1..=n_max {
        let letters: Vec<Bimould> = vec![Bimould::of_length_one(n, Backend::Exact, f.clone()); n];
        let refs: Vec<&Bimould> = letters.iter().collect();
        let m = mu_many(&refs);
        // Sum of push iterates at length n (components below n vanish).
        let mut acc = m.clone();
        let mut cur = m.clone();
        for _ in 1..=n {
            cur = unary(&cur, UnaryOp::Push).expect("push is total");
            acc = acc.add(&cur);
        }
        for r in 0..=n {
            if !acc.comp(r).as_ratfun().is_zero() {
                return false;
            }
        }
    }
    true
}

/// The four primary bimoulds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimaryKind {
    Ez,
    Es,
    Oz,
    Os,
}

impl PrimaryKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "ez" => Some(PrimaryKind::Ez),
            "es" => Some(PrimaryKind::Es),
            "oz" => Some(PrimaryKind::Oz),
            "os" => Some(PrimaryKind::Os),
            _ => None,
        }
    }
}

/// Closed product formulas: ez(w) = E(w_1)...E(w_r) and
/// es(w) = E(u1; v1-v2) ... E(u1+...+u_{r-1}; v_{r-1}-v_r) E(u1+...+u_r; v_r);
/// oz and os use the conjugate. The operator constructions (invmu of 1 - E
/// and expari of E) are verified against these in the check suite.
pub fn primary(unit: &FlexionUnit, kind: PrimaryKind, trunc: usize, backend: Backend) -> Bimould {
    let base = match kind {
        PrimaryKind::Ez | PrimaryKind::Es => unit.component().clone(),
        PrimaryKind::Oz | PrimaryKind::Os => unit.conjugate().clone(),
    };
    match kind {
        PrimaryKind::Ez | PrimaryKind::Oz => Bimould::from_closed(trunc, backend, Rational::one(), |r| {
            let mut acc = RatFun::one();
            for i in 1..=r {
                acc = acc.mul(&at(&base, &u(i), &v(i)));
            }
            acc
        }),
        PrimaryKind::Es | PrimaryKind::Os => Bimould::from_closed(trunc, backend, Rational::one(), |r| {
            let mut acc = RatFun::one();
            for i in 1..r {
                acc = acc.mul(&at(&base, &usum(i), &v(i).sub(&v(i + 1))));
            }
            acc.mul(&at(&base, &usum(r), &v(r)))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::{ratfun_string, Polynomial};

    #[test]
    fn polar_units_validate() {
        assert!(verify_unit(FlexionUnit::polar_u().component()).is_unit());
        assert!(verify_unit(FlexionUnit::polar_v().component()).is_unit());
    }

    #[test]
    fn conjugate_of_polar_u_is_polar_v() {
        let unit = FlexionUnit::polar_u();
        assert_eq!(unit.conjugate(), FlexionUnit::polar_v().component());
    }

    #[test]
    fn linear_component_fails_tripartite() {
        // E = u1 is odd but fails the tripartite identity with the residual
        // u1*u2 - (u1+u2)^2.
        let e = RatFun::from_poly(Polynomial::var(VarIndex::u(1)));
        match verify_unit(&e) {
            UnitCheck::FailsTripartite(w) => {
                let expect = Polynomial::var(VarIndex::u(1)).mul(&Polynomial::var(VarIndex::u(2))).sub(
                    &Polynomial::var(VarIndex::u(1))
                        .add(&Polynomial::var(VarIndex::u(2)))
                        .pow(2),
                );
                assert_eq!(w, RatFun::from_poly(expect));
            }
            other => panic!("expected tripartite failure, got {other:?}"),
        }
    }

    #[test]
    fn even_component_fails_parity() {
        let e = RatFun::new(Polynomial::one(), Polynomial::var(VarIndex::u(1)).pow(2)).unwrap();
        assert!(matches!(verify_unit(&e), UnitCheck::FailsParity(_)));
    }

    #[test]
    fn push_neutrality_matches_unit_gate() {
        assert!(push_neutrality_check(FlexionUnit::polar_u().component(), 4));
        assert!(push_neutrality_check(FlexionUnit::polar_v().component(), 4));
        let broken = RatFun::from_poly(Polynomial::var(VarIndex::u(1)));
        assert!(!push_neutrality_check(&broken, 2));
    }

    #[test]
    fn primary_closed_forms_polar_u() {
        let unit = FlexionUnit::polar_u();
        let ez = primary(&unit, PrimaryKind::Ez, 3, Backend::Exact);
        assert_eq!(ratfun_string(ez.comp(2).as_ratfun()), "1 / (u1*u2)");
        let es = primary(&unit, PrimaryKind::Es, 3, Backend::Exact);
        assert_eq!(ratfun_string(es.comp(2).as_ratfun()), "1 / (u1^2 + u1*u2)");
        // oz for polar-u is the v-polar geometric product.
        let oz = primary(&unit, PrimaryKind::Oz, 3, Backend::Exact);
        assert_eq!(ratfun_string(oz.comp(2).as_ratfun()), "1 / (v1*v2)");
    }

    #[test]
    fn unit_registry() {
        assert!(unit_by_spec("polar-u").is_ok());
        assert!(unit_by_spec("polar-v").is_ok());
        assert!(unit_by_spec("nope").is_err());
        let dir = std::env::temp_dir().join("flexion-unit-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("unit.txt");
        std::fs::write(&path, "1 / v1\n").unwrap();
        let unit = unit_by_spec(&format!("custom:{}", path.display())).unwrap();
        assert_eq!(unit.component(), FlexionUnit::polar_v().component());
        std::fs::write(&path, "u1\n").unwrap();
        assert!(unit_by_spec(&format!("custom:{}", path.display())).is_err());
    }
}
