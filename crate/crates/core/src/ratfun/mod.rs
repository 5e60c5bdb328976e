//! Sparse multivariate polynomials and normalized rational functions in the
//! variables u_1..u_R, v_1..v_R, with integer-linear-form substitution (the
//! only substitution flexion calculus needs) and point evaluation.

mod fraction;
pub mod gcd;
mod poly;
mod text;

pub use fraction::RatFun;
pub use gcd::{integer_primitive, poly_divexact, poly_gcd};
pub use poly::{Axis, DualFp, FieldValue, LinearForm, Monomial, Polynomial, VarIndex};
pub use text::{parse_poly, parse_ratfun, poly_string, ratfun_string};
