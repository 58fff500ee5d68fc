//! Exact certification of log-monotonicity and Laguerre inequalities for
//! P-recursive sequences.
//!
//! The crate evaluates sequences given by linear recurrences with rational
//! function coefficients, certifies rational bounds `g(n) < u_n < f(n)` on the
//! quotient `u_n = a_{n-1} a_{n+1} / a_n^2`, turns those bounds into explicit
//! thresholds, and classifies formal asymptotic expansions of `u_n`.

pub mod asymptotics;
pub mod bounds;
pub mod error;
pub mod holdpoint;
pub mod poly;
pub mod ratfunc;
pub mod recurrence;
pub mod sequence;
pub mod verify;

pub use bounds::{BoundCertificate, BoundPair, Provenance};
pub use error::{Error, Result};
pub use holdpoint::hold_point;
pub use poly::Poly;
pub use ratfunc::{RationalFunction, Sign};
pub use recurrence::{apply_scale, Recurrence};
pub use rug::{Integer, Rational};
pub use sequence::{LaguerreViolation, LogMonoRow, Outcome, SequenceCache};
