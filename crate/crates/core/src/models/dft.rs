use num_complex::Complex64;
use serde::Serialize;

use super::{GroupFunction, GroupModel, ModelError};
use crate::engine::CheckReport;
use crate::fourier::fourier;
use crate::linalg::{ComplexMatrix, Tolerance};

/// `F(π_a) = L_a` seen in the character basis of an abelian group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DftReport {
    /// Diagonal of `U F(π_a) U*`.
    pub diagonal: Vec<Complex64>,
    /// `â(χ_j) = Σ_x a(x)·conj(χ_j(x))`.
    pub character_sums: Vec<Complex64>,
    /// Largest off-diagonal modulus of `U F(π_a) U*`.
    pub off_diagonal: f64,
    /// Largest of `off_diagonal` and the diagonal mismatch.
    pub deviation: f64,
}

impl DftReport {
    pub fn check(&self, tol: Tolerance) -> CheckReport {
        let scale = self.character_sums.iter().map(|z| z.norm()).fold(0.0, f64::max);
        CheckReport::new(self.deviation, scale, tol)
    }
}

/// The unitary `U[j, x] = conj(χ_j(x))/√n`. Its adjoint has the characters
/// as columns, which are the common eigenvectors of all `L_a`.
pub fn character_unitary(model: &GroupModel) -> Result<ComplexMatrix, ModelError> {
    let table = model.group().characters()?;
    let n = model.order();
    let norm = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |j, x| table.value(j, x).conj() * norm))
}

pub fn dft_compare(model: &GroupModel, a: &GroupFunction, tol: Tolerance) -> Result<DftReport, ModelError> {
    let u = character_unitary(model)?;
    let transformed = fourier(model.qg(), &model.pi(a)?, tol)?;
    let conjugated = u.matmul(&transformed).matmul(&u.adjoint());
    let n = model.order();
    let diagonal = conjugated.diag();
    let mut off_diagonal = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off_diagonal = off_diagonal.max(conjugated.get(i, j).norm());
            }
        }
    }
    let sqrt_n = (n as f64).sqrt();
    // row j of U is conj(χ_j)/√n, so Σ_x a(x)·U[j,x]·√n is the character sum
    let character_sums: Vec<Complex64> = (0..n).map(|j| (0..n).map(|x| a.values()[x] * u.get(j, x) * sqrt_n).sum()).collect();
    let mismatch = diagonal
        .iter()
        .zip(&character_sums)
        .map(|(d, s)| (d - s).norm())
        .fold(0.0, f64::max);
    Ok(DftReport {
        diagonal,
        character_sums,
        off_diagonal,
        deviation: off_diagonal.max(mismatch),
    })
}
