//! Exact rational linear algebra and the small algebraic utilities built on it.

mod algebra;
mod basis;
mod combinat;
mod matrix;
mod poly;
mod scalar;

pub use algebra::{kernel_nilpotency, lift_idempotent, lift_idempotent_from, AlgebraMap, FiniteDimAlgebra};
pub use basis::{sparse_axpy, EchelonBasis, SparseVec};
pub use combinat::{
    hook_length_dim, partitions, permutation_parity, permutations, pfaffian, schur_weyl_dim, set_partitions, subsets,
};
pub use matrix::{axpy, kernel_basis, rref_rows, RationalMatrix, SparseRow, DENSE_LIMIT};
pub use poly::{cayley_hamilton_residual, char_poly, crt_idempotents, crt_polys, Poly};
pub use scalar::{
    factorial, format_scalar, frac, generalized_binomial, int, one, parse_scalar, sign, to_i64, zero, Scalar,
};

#[derive(Debug, thiserror::Error)]
pub enum LinalgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("annihilation fails, residual:\n{0}")]
    Residual(RationalMatrix),
    #[error("kernel is not nilpotent within the dimension bound")]
    NotNilpotent,
}
