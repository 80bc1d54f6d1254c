//! Exact scalars and exact linear algebra over the rationals.

mod echelon;
mod matrix;
mod plocal;
mod rat;
mod sparse;

pub use echelon::{
    direct_sum_check, image_basis, kernel_basis, rank, rank_of, rref, solve_affine, subspace_equal,
    AffineSolution, Echelon, Subspace,
};
pub use matrix::{QMatrix, DENSE_THRESHOLD};
pub use plocal::PLocal;
pub use rat::{ParseRatError, Rat};
pub use sparse::SparseVec;


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}
