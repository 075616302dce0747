//! Multi-symmetric functions over the rationals: expansion, the classical
//! product indexed by margin-constrained matrices, the Weyl star product on
//! `n` copies of the canonical phase plane, and decomposition in the
//! elementary basis.

pub mod basis;
pub mod error;
pub mod margins;
pub mod multisym;
pub mod polyalg;
pub mod weylstar;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
