//! Exact engine for flexion calculus on bimoulds.
//!
//! The crate builds length-truncated bimoulds over exact rational-function
//! coefficients, implements the uninflected and inflected operator families
//! (mu/lu, amit/anit/axit/arit/ari, gaxit and the gari/gami/gani groups),
//! constructs the primary and secondary bimoulds from a pluggable flexion
//! unit, bridges the formal-diffeomorphism group into GARI, and mechanically
//! verifies the calculus' identities at configurable truncation, either
//! exactly or by Schwartz-Zippel evaluation over a 61-bit prime field.

pub mod bimould;
pub mod error;
pub mod rng;
pub mod flexion;
pub mod giff;
pub mod ratfun;
pub mod scalar;
pub mod units;
pub mod verify;

pub use error::Error;
