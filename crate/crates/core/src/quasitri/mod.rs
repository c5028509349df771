//! Degree-preserving quasi-triangular realizations: block degree
//! equalization, off-diagonal reduction, realization of finite and infinite
//! spectral data, and quasi-triangularization of a given matrix polynomial.

mod blocks;
mod equalize;
mod realize;

pub use blocks::{reduce_offdiagonal, BlockStructure};
pub use equalize::{equalize_block_degree, equalize_with_transforms, Equalized};
pub use realize::{
    grade_shift_view, quasi_triangularize, quasi_triangularize_with, realize_strictly_regular,
    realize_with_infinity, Certificate, QuasiTriResult,
};
