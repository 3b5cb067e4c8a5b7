use nalgebra::DMatrix;
use num_complex::Complex64;

use super::antipode::CoordinateMap;
use super::comult::comultiply_side;
use super::{CheckReport, EngineError, MultiplicativeUnitary, Side};
use crate::linalg::{block, span_basis, ComplexMatrix, SpanBasis, Tolerance};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Vector state `φ(x) = ⟨xξ, ξ⟩` with GNS map `Λ(x) = xξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    xi: Vec<Complex64>,
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

impl Weight {
    pub fn new(xi: Vec<Complex64>) -> Self {
        Self { xi }
    }

    pub fn xi(&self) -> &[Complex64] {
        &self.xi
    }

    pub fn evaluate(&self, x: &ComplexMatrix) -> Complex64 {
        dot(&x.apply(&self.xi), &self.xi)
    }

    pub fn gns(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        x.apply(&self.xi)
    }

    /// Rank deficit of `Λ` on the span; zero means faithful.
    pub fn kernel_dimension(&self, basis: &SpanBasis, tol: Tolerance) -> Result<usize, EngineError> {
        let images: Vec<ComplexMatrix> = basis.elements().iter().map(|b| ComplexMatrix::column(&self.gns(b))).collect();
        Ok(basis.dim() - span_basis(&images, tol)?.dim())
    }

    /// `⟨Λ(x), Λ(y)⟩ = φ(y*x)` over all basis pairs.
    pub fn check_gns(&self, basis: &SpanBasis, tol: Tolerance) -> CheckReport {
        let images: Vec<Vec<Complex64>> = basis.elements().iter().map(|b| self.gns(b)).collect();
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (x, lx) in basis.elements().iter().zip(&images) {
            for (y, ly) in basis.elements().iter().zip(&images) {
                let rhs = self.evaluate(&y.adjoint().matmul(x));
                dev = dev.max((dot(lx, ly) - rhs).norm());
                scale = scale.max(rhs.norm());
            }
        }
        CheckReport::new(dev, scale, tol)
    }

    /// `φ((ω ⊗ id)(Δx)) = φ(x)ω(1)` for every matrix-unit `ω` and basis
    /// element `x`. The unit `e_kl` slices out the leg-1 block `(l, k)`, so
    /// this compares `φ` of every block of `Δx` against `φ(x)` on the
    /// diagonal blocks and zero elsewhere.
    pub fn check_left_invariance(&self, mu: &MultiplicativeUnitary, side: Side, basis: &SpanBasis, tol: Tolerance) -> CheckReport {
        let n = mu.n();
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for x in basis.elements() {
            let dx = comultiply_side(mu, side, x);
            let phi_x = self.evaluate(x);
            scale = scale.max(phi_x.norm());
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { phi_x } else { ZERO };
                    dev = dev.max((self.evaluate(&block(&dx, n, i, j)) - expected).norm());
                }
            }
        }
        CheckReport::new(dev, scale, tol)
    }

    /// `ψ((id ⊗ ω)(Δx)) = ψ(x)ω(1)` with `ψ = φ∘S`.
    pub fn check_right_invariance(
        &self,
        mu: &MultiplicativeUnitary,
        side: Side,
        basis: &SpanBasis,
        antipode: &CoordinateMap,
        tol: Tolerance,
    ) -> CheckReport {
        let n = mu.n();
        let psi = |y: &ComplexMatrix| self.evaluate(&antipode.apply(basis, y));
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for x in basis.elements() {
            let dx = comultiply_side(mu, side, x);
            let psi_x = psi(x);
            scale = scale.max(psi_x.norm());
            for k in 0..n {
                for l in 0..n {
                    // (id ⊗ e_kl)(Δx)[i, j] = Δx[(i,l),(j,k)]
                    let slice = ComplexMatrix::from_fn(n, n, |i, j| dx.get(i * n + l, j * n + k));
                    let expected = if k == l { psi_x } else { ZERO };
                    dev = dev.max((psi(&slice) - expected).norm());
                }
            }
        }
        CheckReport::new(dev, scale, tol)
    }
}

/// Common null space of a stack of linear conditions `A v = 0`, where `A`
/// has `n` columns.
fn null_space(a: DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    let n = a.ncols();
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = 1e-8 * sigma_max.max(1.0);
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff {
            out.push((0..n).map(|j| v_t[(k, j)].conj()).collect());
        }
    }
    // rows of V* beyond the number of singular values are also null
    for k in svd.singular_values.len()..v_t.nrows() {
        out.push((0..n).map(|j| v_t[(k, j)].conj()).collect());
    }
    out
}

/// Implementing vectors `(ξ, ξ̂)` of the Haar weights of a multiplicative
/// unitary.
///
/// `ξ` spans the vectors with `W(η ⊗ ξ) = η ⊗ ξ` for all `η`, i.e.
/// `W_ij ξ = δ_ij ξ` on leg-1 blocks, and `ξ̂` spans those with
/// `W(ξ̂ ⊗ η) = ξ̂ ⊗ η`, i.e. `Σ_j ξ̂_j W_ij = ξ̂_i·1`. Invariance of the
/// vector states follows directly from these fixed-point properties. The
/// scale is fixed by `‖ξ̂‖ = 1` and `⟨ξ̂, ξ⟩ = 1`, and the phase by making the
/// first largest entry of `ξ̂` real positive. For a group this yields the
/// counting measure and evaluation at the identity.
pub fn haar_vectors(mu: &MultiplicativeUnitary) -> Result<(Weight, Weight), EngineError> {
    let n = mu.n();
    let blocks: Vec<ComplexMatrix> = (0..n * n).map(|idx| mu.block(idx / n, idx % n)).collect();
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };

    // rows (i, j, k), unknown l: W_ij[k, l] − δ_ij δ_kl
    let a = DMatrix::from_fn(n * n * n, n, |row, l| {
        let (i, j, k) = (row / (n * n), (row / n) % n, row % n);
        blocks[i * n + j].get(k, l) - Complex64::new(delta(i, j) * delta(k, l), 0.0)
    });
    // rows (i, k, l), unknown j: W_ij[k, l] − δ_ij δ_kl
    let ahat = DMatrix::from_fn(n * n * n, n, |row, j| {
        let (i, k, l) = (row / (n * n), (row / n) % n, row % n);
        blocks[i * n + j].get(k, l) - Complex64::new(delta(i, j) * delta(k, l), 0.0)
    });

    let xi = single(null_space(a), Side::Primal)?;
    let mut xihat = single(null_space(ahat), Side::Dual)?;

    let norm = xihat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let largest = xihat.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = xihat
        .iter()
        .position(|z| z.norm() >= (1.0 - 1e-6) * largest)
        .expect("nonzero vector");
    let phase = xihat[pivot].conj() / xihat[pivot].norm();
    for z in &mut xihat {
        *z = *z * phase / norm;
    }

    let overlap = dot(&xihat, &xi);
    if overlap.norm() < 1e-8 {
        return Err(EngineError::DegenerateHaarVectors { overlap: overlap.norm() });
    }
    let c = (Complex64::new(1.0, 0.0) / overlap).conj();
    let xi = xi.into_iter().map(|z| z * c).collect();
    Ok((Weight::new(xi), Weight::new(xihat)))
}

fn single(mut space: Vec<Vec<Complex64>>, side: Side) -> Result<Vec<Complex64>, EngineError> {
    if space.len() != 1 {
        return Err(EngineError::HaarVector {
            side,
            dimension: space.len(),
        });
    }
    Ok(space.pop().expect("one vector"))
}
