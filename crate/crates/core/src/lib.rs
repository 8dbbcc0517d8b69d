//! Exact construction and verification of spinor Abelian varieties.
//!
//! The crate builds the complex Clifford algebra of a `2k`-dimensional
//! quadratic space over Q(i), a concrete unitary spinor module
//! `Δ = Q(i)^(2^k)`, and the complex torus `S_Δ = Δ / Γ_Δ` on which the
//! Gaussian-integer subring of the algebra acts. Every statement about
//! translation systems, torsion, the dual torus and the endomorphism ring is
//! checked by finite exact computation.

pub mod action;
pub mod clifford;
pub mod dual;
pub mod endo;
pub mod error;
pub mod exact;
pub mod parse;
pub mod report;
pub mod spinor;
pub mod suite;
pub mod torus;

pub use error::{Error, Result};
