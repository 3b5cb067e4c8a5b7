use num_complex::Complex64;

use super::antipode::CoordinateMap;
use super::{CheckReport, EngineError, MultiplicativeUnitary};
use crate::linalg::{linear_combination, slice_left, ComplexMatrix, Functional, SpanBasis, Tolerance};

/// A functional with its ♯-partner `ω♯(x) = conj(ω(S(x)*))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SharpFunctional {
    pub omega: Functional,
    pub omega_sharp: Functional,
}

/// `ω♯`, encoded by the density `Σ_k ω♯(B_k) B_k*`, which is supported on
/// the span and agrees with `x ↦ conj(ω(S(x)*))` there.
pub fn sharp(omega: &Functional, s: &CoordinateMap, basis: &SpanBasis) -> Functional {
    let (rows, cols) = basis.shape();
    let values: Vec<Complex64> = basis
        .elements()
        .iter()
        .map(|b| omega.evaluate(&s.apply(basis, b).adjoint()).conj())
        .collect();
    let adjoints: Vec<ComplexMatrix> = basis.elements().iter().map(ComplexMatrix::adjoint).collect();
    let density = linear_combination(&values, &adjoints, cols, rows);
    Functional::from_density(density).expect("square basis elements")
}

impl SharpFunctional {
    pub fn new(omega: Functional, s: &CoordinateMap, basis: &SpanBasis) -> Self {
        let omega_sharp = sharp(&omega, s, basis);
        Self { omega, omega_sharp }
    }

    /// `((ω ⊗ id)(W))* = (ω♯ ⊗ id)(W)`, entrywise.
    pub fn adjoint_deviation(&self, mu: &MultiplicativeUnitary) -> Result<f64, EngineError> {
        let lhs = slice_left(&self.omega, mu.dense())?.adjoint();
        let rhs = slice_left(&self.omega_sharp, mu.dense())?;
        Ok(lhs.max_abs_diff(&rhs))
    }

    /// `(ω♯)♯ = ω` on the basis.
    pub fn involution_deviation(&self, s: &CoordinateMap, basis: &SpanBasis) -> f64 {
        let twice = sharp(&self.omega_sharp, s, basis);
        basis
            .elements()
            .iter()
            .map(|b| (twice.evaluate(b) - self.omega.evaluate(b)).norm())
            .fold(0.0, f64::max)
    }
}

/// Both ♯ properties over a family of functionals.
pub fn check_sharp(
    mu: &MultiplicativeUnitary,
    omegas: &[Functional],
    s: &CoordinateMap,
    basis: &SpanBasis,
    tol: Tolerance,
) -> Result<(CheckReport, CheckReport), EngineError> {
    let mut adjoint = 0.0f64;
    let mut involution = 0.0f64;
    let mut scale = 0.0f64;
    for omega in omegas {
        let pair = SharpFunctional::new(omega.clone(), s, basis);
        adjoint = adjoint.max(pair.adjoint_deviation(mu)?);
        involution = involution.max(pair.involution_deviation(s, basis));
        scale = scale.max(slice_left(omega, mu.dense())?.max_abs());
    }
    Ok((CheckReport::new(adjoint, scale, tol), CheckReport::new(involution, scale, tol)))
}
