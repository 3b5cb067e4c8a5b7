//! The dual pair `(L^∞(G), ℒ(G))` of a finite group, realized on `ℓ²(G)`.

mod dft;
mod function;

pub use dft::{character_unitary, dft_compare, DftReport};
pub use function::GroupFunction;

use num_complex::Complex64;
use thiserror::Error;

use crate::engine::{Antipode, CoordinateMap, EngineError, MultiplicativeUnitary, QuantumGroupPair, Weight};
use crate::fourier::FourierError;
use crate::group::{FiniteGroup, GroupError};
use crate::linalg::{ComplexMatrix, SpanBasis, Tolerance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("function has {found} values, group order is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
}

/// A finite group with its quantum group pair. `W` is the permutation
/// `e_s ⊗ e_t ↦ e_s ⊗ e_{st}`, `φ` is counting measure (`ξ = (1,…,1)`),
/// `φ̂` is evaluation at the identity (`ξ̂ = e_identity`), and the antipodes
/// are the closed forms `S(a) = a∘inv`, `Ŝ(L_b) = L_{b∘inv}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupModel {
    group: FiniteGroup,
    qg: QuantumGroupPair,
    delta: Vec<f64>,
}

impl GroupModel {
    pub fn build(group: FiniteGroup) -> Self {
        let n = group.order();
        let image = (0..n * n).map(|a| (a / n) * n + group.mult(a / n, a % n)).collect();
        let mu = MultiplicativeUnitary::from_permutation(n, image).expect("group law gives a permutation");

        let diagonal_units: Vec<ComplexMatrix> = (0..n).map(|x| pi_unit(n, x)).collect();
        let inv_sqrt = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        let translations: Vec<ComplexMatrix> = (0..n).map(|g| left_translation(&group, g).scale(inv_sqrt)).collect();
        let exact = Tolerance::default();
        let m = SpanBasis::from_orthonormal(diagonal_units, exact).expect("matrix units are orthonormal");
        let mhat = SpanBasis::from_orthonormal(translations, exact).expect("translations are orthogonal");

        let phi = Weight::new(vec![Complex64::new(1.0, 0.0); n]);
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[group.identity()] = Complex64::new(1.0, 0.0);
        let phihat = Weight::new(e);

        // both bases are indexed by group elements and both antipodes send
        // element x to x⁻¹
        let inversion = ComplexMatrix::permutation(&(0..n).map(|x| group.inv(x)).collect::<Vec<_>>());
        let s = Antipode::from_map(CoordinateMap::new(inversion.clone()), 0.0);
        let shat = Antipode::from_map(CoordinateMap::new(inversion), 0.0);

        let qg = QuantumGroupPair::from_parts(mu, m, mhat, phi, phihat, s, shat);
        Self {
            group,
            qg,
            delta: vec![1.0; n],
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn qg(&self) -> &QuantumGroupPair {
        &self.qg
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Modular function, identically one for a finite group.
    pub fn modular_function(&self) -> &[f64] {
        &self.delta
    }

    pub fn check_len(&self, f: &GroupFunction) -> Result<(), ModelError> {
        if f.len() != self.order() {
            return Err(ModelError::LengthMismatch {
                expected: self.order(),
                found: f.len(),
            });
        }
        Ok(())
    }

    /// Multiplication operator `π_a`.
    pub fn pi(&self, a: &GroupFunction) -> Result<ComplexMatrix, ModelError> {
        self.check_len(a)?;
        Ok(ComplexMatrix::diagonal(a.values()))
    }

    /// Convolution operator `L_b`, `L_b[x, y] = b(x·y⁻¹)`.
    pub fn l(&self, b: &GroupFunction) -> Result<ComplexMatrix, ModelError> {
        self.check_len(b)?;
        let g = &self.group;
        let n = self.order();
        Ok(ComplexMatrix::from_fn(n, n, |x, y| b.values()[g.mult(x, g.inv(y))]))
    }

    /// Reads `a` back from `π_a` (the diagonal).
    pub fn function_of_pi(&self, x: &ComplexMatrix) -> GroupFunction {
        GroupFunction::new(x.diag())
    }

    /// Reads `b` back from `L_b` (the identity column, `b(x) = L_b[x, e]`).
    pub fn function_of_l(&self, y: &ComplexMatrix) -> GroupFunction {
        let e = self.group.identity();
        GroupFunction::new((0..self.order()).map(|x| y.get(x, e)).collect())
    }

    /// `a*(x) = conj(a(x))`, so that `π_a* = π_{a*}`.
    pub fn star_m(&self, a: &GroupFunction) -> GroupFunction {
        GroupFunction::new(a.values().iter().map(|z| z.conj()).collect())
    }

    /// `b*(x) = δ(x⁻¹)·conj(b(x⁻¹))`, so that `L_b* = L_{b*}`.
    pub fn star_mhat(&self, b: &GroupFunction) -> GroupFunction {
        let g = &self.group;
        GroupFunction::new(
            (0..self.order())
                .map(|x| b.values()[g.inv(x)].conj() * self.delta[g.inv(x)])
                .collect(),
        )
    }

    /// `S(a)(x) = a(x⁻¹)`; the same formula gives `Ŝ` on coefficient
    /// functions since `δ ≡ 1`.
    pub fn antipode_function(&self, a: &GroupFunction) -> GroupFunction {
        GroupFunction::new((0..self.order()).map(|x| a.values()[self.group.inv(x)]).collect())
    }

    /// Number of elements with `inv(inv(x)) ≠ x`: `S² = id` holds exactly
    /// iff this is zero.
    pub fn antipode_square_failures(&self) -> usize {
        (0..self.order()).filter(|&x| self.group.inv(self.group.inv(x)) != x).count()
    }

    /// `(a ∗ c)(y) = Σ_x a(x)·c(x⁻¹y)`.
    pub fn classical_convolution(&self, a: &GroupFunction, c: &GroupFunction) -> GroupFunction {
        let g = &self.group;
        let n = self.order();
        GroupFunction::new(
            (0..n)
                .map(|y| (0..n).map(|x| a.values()[x] * c.values()[g.mult(g.inv(x), y)]).sum())
                .collect(),
        )
    }

    pub fn pointwise_product(&self, b: &GroupFunction, d: &GroupFunction) -> GroupFunction {
        GroupFunction::new(b.values().iter().zip(d.values()).map(|(x, y)| x * y).collect())
    }

    /// `Σ_x a(x)·b(x)`.
    pub fn pairing_sum(&self, a: &GroupFunction, b: &GroupFunction) -> Complex64 {
        a.values().iter().zip(b.values()).map(|(x, y)| x * y).sum()
    }
}

fn pi_unit(n: usize, x: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m.set(x, x, Complex64::new(1.0, 0.0));
    m
}

/// `λ_g e_y = e_{gy}`.
pub fn left_translation(group: &FiniteGroup, g: usize) -> ComplexMatrix {
    ComplexMatrix::permutation(&(0..group.order()).map(|y| group.mult(g, y)).collect::<Vec<_>>())
}
