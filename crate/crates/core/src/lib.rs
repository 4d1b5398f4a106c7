//! Cylindrical algebraic decomposition over exact arithmetic.
//!
//! The crate builds sign-invariant CADs with McCallum projection, CADs
//! invariant with respect to an equational constraint, and truth-table
//! invariant CADs for sequences of clauses (with or without designated
//! equational constraints), plus measures for choosing a problem formulation.

pub mod engine;
pub mod heuristics;
pub mod lifting;
pub mod polyarith;
pub mod projection;
pub mod realalg;

pub use polyarith::{Polynomial, Rational, VarOrder};
pub use realalg::{RealAlgebraic, SamplePoint};
