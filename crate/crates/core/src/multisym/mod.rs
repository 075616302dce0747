//! Multi-symmetric functions: Vaccarino functions `e_α(p)`, the elementary,
//! homogeneous and power-sum families, symmetrization, and the classical
//! product formula indexed by margin matrices.

mod expand;
mod product;
mod types;

pub(crate) use expand::boxes_below;
pub use expand::{
    expand_elementary, expand_homogeneous, expand_vaccarino, is_invariant, power_sum, staircase, symmetrize,
};
pub use product::{
    classical_product, elementary_product_count, margin_index, monomial_reduction, product_arguments, MonomialReduction,
};
pub use types::{ESum, ESymbol, MultiIndex, PolyTuple};
