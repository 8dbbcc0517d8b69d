//! Exact arithmetic over Q, Q(i), Z and Z[i], plus the linear algebra the
//! rest of the crate is built on.

mod gaussian;
mod matrix;
mod smith;

pub(crate) use gaussian::parse_gaussian_at;
pub use gaussian::{frac, ratio, GaussianRational};
pub use matrix::{Field, IntMatrix, Matrix, RowEchelon};
pub use smith::{smith_form, solve_mod1, unimodular_inverse};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;
