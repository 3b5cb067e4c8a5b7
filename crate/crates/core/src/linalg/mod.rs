//! Dense complex linear algebra on `H`, `H ⊗ H` and `H ⊗ H ⊗ H`.

mod functional;
mod matrix;
pub mod random;
mod span;
mod tensor;
mod tolerance;

pub use functional::Functional;
pub use matrix::{linear_combination, ComplexMatrix};
pub use span::{span_basis, subspace_equal, SpanBasis, SubspaceComparison, SubspaceRelation, RANK_CUTOFF_RELATIVE};
pub use tensor::{
    assemble_leg1, block, contract_left, contract_right, flip, kron, kron_vec, leg1_components, leg_embed, slice_left, slice_right, Leg,
};
pub use tolerance::Tolerance;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("invalid tolerance (absolute {absolute}, relative {relative}); both must be finite and nonnegative")]
    InvalidTolerance { absolute: f64, relative: f64 },
    #[error("{context} must be square, got {rows}x{cols}")]
    NotSquare { context: &'static str, rows: usize, cols: usize },
    #[error("family is not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
}
