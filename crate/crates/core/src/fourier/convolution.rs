use num_complex::Complex64;

use super::{fourier_unchecked, inverse_fourier_unchecked, require_member, FourierError};
use crate::engine::{CheckReport, QuantumGroupPair, Side};
use crate::linalg::{leg1_components, linear_combination, ComplexMatrix, Tolerance};

/// `a ∗ c = F⁻¹(F(a)F(c))`.
pub fn convolve(qg: &QuantumGroupPair, a: &ComplexMatrix, c: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix, FourierError> {
    require_member(qg, Side::Primal, a, tol)?;
    require_member(qg, Side::Primal, c, tol)?;
    let product = fourier_unchecked(qg, a).matmul(&fourier_unchecked(qg, c));
    Ok(inverse_fourier_unchecked(qg, &product))
}

/// `b ∗ d = F(F⁻¹(b)F⁻¹(d))`.
pub fn convolve_dual(qg: &QuantumGroupPair, b: &ComplexMatrix, d: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix, FourierError> {
    require_member(qg, Side::Dual, b, tol)?;
    require_member(qg, Side::Dual, d, tol)?;
    let product = inverse_fourier_unchecked(qg, b).matmul(&inverse_fourier_unchecked(qg, d));
    Ok(fourier_unchecked(qg, &product))
}

/// `a ∗ c = (φ ⊗ id)([(S⁻¹ ⊗ id)(Δc)](a ⊗ 1))`.
pub fn convolve_direct(qg: &QuantumGroupPair, a: &ComplexMatrix, c: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix, FourierError> {
    require_member(qg, Side::Primal, a, tol)?;
    require_member(qg, Side::Primal, c, tol)?;
    direct(qg, Side::Primal, a, c)
}

/// `b ∗ d = (φ̂ ⊗ id)([(Ŝ⁻¹ ⊗ id)(Δ̂d)](b ⊗ 1))`.
pub fn convolve_dual_direct(
    qg: &QuantumGroupPair,
    b: &ComplexMatrix,
    d: &ComplexMatrix,
    tol: Tolerance,
) -> Result<ComplexMatrix, FourierError> {
    require_member(qg, Side::Dual, b, tol)?;
    require_member(qg, Side::Dual, d, tol)?;
    direct(qg, Side::Dual, b, d)
}

// With Δc = Σ_m B_m ⊗ Y_m over the orthonormal basis B_m of the algebra,
// the slice is Σ_m weight(S⁻¹(B_m)·a) Y_m.
fn direct(qg: &QuantumGroupPair, side: Side, a: &ComplexMatrix, c: &ComplexMatrix) -> Result<ComplexMatrix, FourierError> {
    let n = qg.n();
    let basis = qg.basis(side);
    let s_inv = qg.antipode(side).inverse()?;
    let weight = qg.weight(side);
    let components = leg1_components(&qg.comultiply(side, c), basis.elements()).map_err(crate::engine::EngineError::from)?;
    let coeffs: Vec<Complex64> = basis
        .elements()
        .iter()
        .map(|b| weight.evaluate(&s_inv.apply(basis, b).matmul(a)))
        .collect();
    Ok(linear_combination(&coeffs, &components, n, n))
}

/// Worst disagreement between the two routes of each convolution over
/// sample pairs of the given side.
pub fn check_convolution_agreement(
    qg: &QuantumGroupPair,
    side: Side,
    pairs: &[(ComplexMatrix, ComplexMatrix)],
    tol: Tolerance,
) -> Result<CheckReport, FourierError> {
    let mut dev = 0.0f64;
    let mut scale = 0.0f64;
    for (x, y) in pairs {
        let (via_transform, via_direct) = match side {
            Side::Primal => (convolve(qg, x, y, tol)?, convolve_direct(qg, x, y, tol)?),
            Side::Dual => (convolve_dual(qg, x, y, tol)?, convolve_dual_direct(qg, x, y, tol)?),
        };
        dev = dev.max(via_transform.max_abs_diff(&via_direct));
        scale = scale.max(via_transform.max_abs());
    }
    Ok(CheckReport::new(dev, scale, tol))
}
