//! Generic engine for a multiplicative unitary `W` on `H ⊗ H`: slice
//! algebras, comultiplications, Haar weights, antipodes and the checks
//! tying them together.

pub mod algebra;
pub mod antipode;
pub mod comult;
mod pair;
pub mod sharp;
mod unitary;
pub mod weight;

pub use algebra::{closure, generate_m, generate_mhat, ClosureReport, SliceAlgebra};
pub use antipode::{antipode_from_slices, antipode_hat_from_slices, slice_consistency, Antipode, CoordinateMap};
pub use comult::{check_coassociativity, comultiply, dual_comultiply, dual_comultiply_cop};
pub use pair::{pontryagin_check, PontryaginReport, QuantumGroupPair};
pub use sharp::{check_sharp, sharp, SharpFunctional};
pub use unitary::{MultiplicativeUnitary, DENSE_PENTAGON_LIMIT};
pub use weight::{haar_vectors, Weight};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, Tolerance};

/// Which of the two algebras of the pair: `M` (functions on the group in
/// the classical case) or `M̂` (the group algebra).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("operator must be {expected}x{expected}, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("operator has non-finite entries")]
    NonFinite,
    #[error("index map is not a permutation")]
    NotPermutation,
    #[error("dense pentagon check limited to n ≤ {limit}, got n = {n}")]
    DenseTooLarge { n: usize, limit: usize },
    #[error("slice span on the {side:?} side is not a unital *-algebra (deviation {deviation:e})")]
    ClosureFailure { side: Side, deviation: f64 },
    #[error("antipode slices on the {side:?} side are inconsistent (residual {residual:e})")]
    InconsistentSlices { side: Side, residual: f64 },
    #[error("antipode is singular (condition number {condition:e})")]
    SingularAntipode { condition: f64 },
    #[error("Haar vector on the {side:?} side is not unique: fixed space has dimension {dimension}")]
    HaarVector { side: Side, dimension: usize },
    #[error("Haar vectors are orthogonal (overlap {overlap:e})")]
    DegenerateHaarVectors { overlap: f64 },
    #[error("Haar weight on the {side:?} side is not faithful (kernel dimension {kernel})")]
    NotFaithful { side: Side, kernel: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Outcome of one numerical check. `pass` holds iff
/// `deviation ≤ tolerance`, where the tolerance is the absolute part plus
/// the relative part times the natural scale of the compared quantities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub pass: bool,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckReport {
    pub fn new(deviation: f64, scale: f64, tol: Tolerance) -> Self {
        let tolerance = tol.absolute + tol.relative * scale;
        Self {
            pass: deviation <= tolerance,
            deviation,
            tolerance,
        }
    }

    /// A check that must hold exactly.
    pub fn exact(deviation: f64) -> Self {
        Self {
            pass: deviation == 0.0,
            deviation,
            tolerance: 0.0,
        }
    }

    pub fn with_tolerance(deviation: f64, tolerance: f64) -> Self {
        Self {
            pass: deviation <= tolerance,
            deviation,
            tolerance,
        }
    }
}
