//! Exact rational dense linear algebra.

mod elim;
mod mat;
mod scalar;

pub use elim::{
    col_space_contains, complete_to_full_rank, invert, null_space, rank, row_space_contains, rref,
    Axis, EchelonBasis, ElemOp, ElemOpLog, Rref,
};
pub use mat::Mat;
pub use scalar::{format_scalar, frac, int, is_canonical, parse_scalar, Scalar};
