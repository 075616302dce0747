//! Exact polynomial arithmetic over the rationals.
//!
//! Variables are either abstract coordinate labels `y_j` (the arguments of
//! multi-symmetric functions) or point coordinates `x_{ij}`. Polynomials are
//! kept in a canonical sorted form, and [`HbarSeries`] adds a truncated formal
//! variable ħ on top.

mod monomial;
mod perm;
mod polynomial;
mod series;

pub use monomial::{Monomial, VarId};
pub use perm::Permutation;
pub use polynomial::Polynomial;
pub use series::{min_order, HbarSeries};

use crate::Rational;
use num_bigint::BigInt;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x_{ij}` as a polynomial.
pub fn x(i: u32, j: u32) -> Polynomial {
    Polynomial::var(VarId::point(i, j))
}

/// `y_j` as a polynomial.
pub fn y(j: u32) -> Polynomial {
    Polynomial::var(VarId::Abstract(j))
}
