//! Exact linear algebra over the rationals and prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::{format_rational, parse_rational, FieldSpec, Scalar, MAX_PRIME};
pub use matrix::{Matrix, Rref};
pub use subspace::{all_subspaces, count_subspaces, Subspace};
pub(crate) use subspace::{combinations, increment};

/// Rank of the matrix whose rows are `vectors` (each of length `dim`).
pub fn span_rank(field: FieldSpec, dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    Matrix::from_rows(field, dim, vectors).rank()
}
