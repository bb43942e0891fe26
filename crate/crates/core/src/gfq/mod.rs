//! Arithmetic in `F_q` and dense linear algebra over it.

mod field;
mod matrix;

pub use field::{f_add, f_inv, f_mul, make_field, Elem, FieldSpec};
pub use matrix::{kernel_basis, rref, FqMatrix, Rref};
