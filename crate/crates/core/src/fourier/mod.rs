//! Fourier transform between the two algebras of a pair, its inverse, both
//! convolution products and the dual pairing.

mod convolution;
mod pairing;

pub use convolution::{check_convolution_agreement, convolve, convolve_direct, convolve_dual, convolve_dual_direct};
pub use pairing::{check_ft_pairing, check_pairing_axioms, pairing, PairingSample, PairingValue};

use num_complex::Complex64;
use thiserror::Error;

use crate::engine::{CheckReport, EngineError, QuantumGroupPair, Side};
use crate::linalg::{contract_left, contract_right, kron, ComplexMatrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FourierError {
    #[error("operand is not in the {side:?} algebra (residual {residual:e})")]
    NotInAlgebra { side: Side, residual: f64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub(crate) fn require_member(qg: &QuantumGroupPair, side: Side, x: &ComplexMatrix, tol: Tolerance) -> Result<(), FourierError> {
    let residual = qg.membership(side, x);
    if residual > tol.absolute + tol.relative * x.frobenius_norm() {
        return Err(FourierError::NotInAlgebra { side, residual });
    }
    Ok(())
}

pub(crate) fn vec_dist(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

/// `F(a) = (φ ⊗ id)(W(a ⊗ 1))`, sliced on leg 1 by the vector `ξ_φ`.
pub fn fourier(qg: &QuantumGroupPair, a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix, FourierError> {
    require_member(qg, Side::Primal, a, tol)?;
    Ok(fourier_unchecked(qg, a))
}

pub(crate) fn fourier_unchecked(qg: &QuantumGroupPair, a: &ComplexMatrix) -> ComplexMatrix {
    let n = qg.n();
    let wa = qg.mu().left_mul(&kron(a, &ComplexMatrix::identity(n)));
    let xi = qg.phi().xi();
    contract_left(&wa, xi, xi)
}

/// `F⁻¹(b) = (id ⊗ φ̂)(W*(1 ⊗ b))`, sliced on leg 2 by `ξ_φ̂`.
pub fn inverse_fourier(qg: &QuantumGroupPair, b: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix, FourierError> {
    require_member(qg, Side::Dual, b, tol)?;
    Ok(inverse_fourier_unchecked(qg, b))
}

pub(crate) fn inverse_fourier_unchecked(qg: &QuantumGroupPair, b: &ComplexMatrix) -> ComplexMatrix {
    let n = qg.n();
    let wb = qg.mu().adjoint_left_mul(&kron(&ComplexMatrix::identity(n), b));
    let xi = qg.phihat().xi();
    contract_right(&wb, xi, xi)
}

/// A transform together with both GNS images.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierReport {
    pub input: ComplexMatrix,
    pub output: ComplexMatrix,
    /// `Λ(a)`.
    pub gns_input: Vec<Complex64>,
    /// `Λ̂(F(a))`.
    pub gns_output: Vec<Complex64>,
    /// `‖Λ̂(F(a)) − Λ(a)‖`.
    pub deviation: f64,
}

pub fn fourier_report(qg: &QuantumGroupPair, a: &ComplexMatrix, tol: Tolerance) -> Result<FourierReport, FourierError> {
    let output = fourier(qg, a, tol)?;
    let gns_input = qg.phi().gns(a);
    let gns_output = qg.phihat().gns(&output);
    let deviation = vec_dist(&gns_input, &gns_output);
    Ok(FourierReport {
        input: a.clone(),
        output,
        gns_input,
        gns_output,
        deviation,
    })
}

/// Worst deviations of `F⁻¹∘F` on `M` and `F∘F⁻¹` on `M̂` over full bases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionReport {
    pub primal: f64,
    pub dual: f64,
}

impl InversionReport {
    pub fn deviation(&self) -> f64 {
        self.primal.max(self.dual)
    }

    pub fn check(&self, tol: Tolerance) -> CheckReport {
        CheckReport::new(self.deviation(), 1.0, tol)
    }
}

pub fn check_inversion(qg: &QuantumGroupPair) -> InversionReport {
    let primal = qg
        .m()
        .elements()
        .iter()
        .map(|x| inverse_fourier_unchecked(qg, &fourier_unchecked(qg, x)).max_abs_diff(x))
        .fold(0.0, f64::max);
    let dual = qg
        .mhat()
        .elements()
        .iter()
        .map(|y| fourier_unchecked(qg, &inverse_fourier_unchecked(qg, y)).max_abs_diff(y))
        .fold(0.0, f64::max);
    InversionReport { primal, dual }
}

/// `‖Λ̂(F(x)) − Λ(x)‖` on the basis of `M` and `‖Λ(F⁻¹(y)) − Λ̂(y)‖` on the
/// basis of `M̂`.
pub fn check_gns_transport(qg: &QuantumGroupPair, tol: Tolerance) -> CheckReport {
    let forward = qg
        .m()
        .elements()
        .iter()
        .map(|x| vec_dist(&qg.phihat().gns(&fourier_unchecked(qg, x)), &qg.phi().gns(x)))
        .fold(0.0, f64::max);
    let backward = qg
        .mhat()
        .elements()
        .iter()
        .map(|y| vec_dist(&qg.phi().gns(&inverse_fourier_unchecked(qg, y)), &qg.phihat().gns(y)))
        .fold(0.0, f64::max);
    CheckReport::new(forward.max(backward), 1.0, tol)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlancherelValue {
    /// `φ̂(F(a)*F(a))`.
    pub lhs: Complex64,
    /// `φ(a*a)`.
    pub rhs: Complex64,
    pub deviation: f64,
}

pub fn plancherel(qg: &QuantumGroupPair, a: &ComplexMatrix, tol: Tolerance) -> Result<PlancherelValue, FourierError> {
    let f = fourier(qg, a, tol)?;
    let lhs = qg.phihat().evaluate(&f.adjoint().matmul(&f));
    let rhs = qg.phi().evaluate(&a.adjoint().matmul(a));
    Ok(PlancherelValue {
        lhs,
        rhs,
        deviation: (lhs - rhs).norm(),
    })
}

/// Plancherel over a sample of elements of `M`.
pub fn check_plancherel(qg: &QuantumGroupPair, samples: &[ComplexMatrix], tol: Tolerance) -> Result<CheckReport, FourierError> {
    let mut dev = 0.0f64;
    let mut scale = 0.0f64;
    for a in samples {
        let p = plancherel(qg, a, tol)?;
        dev = dev.max(p.deviation);
        scale = scale.max(p.rhs.norm());
    }
    Ok(CheckReport::new(dev, scale, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::models::{GroupFunction, GroupModel};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z(n: usize) -> GroupModel {
        GroupModel::build(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn z2_transform_examples() {
        let model = z(2);
        let tol = Tolerance::default();
        let delta_e = model.pi(&GroupFunction::delta(2, 0)).unwrap();
        assert!(
            fourier(model.qg(), &delta_e, tol)
                .unwrap()
                .max_abs_diff(&ComplexMatrix::identity(2))
                < 1e-15
        );
        let delta_g = model.pi(&GroupFunction::delta(2, 1)).unwrap();
        let swap = ComplexMatrix::permutation(&[1, 0]);
        assert!(fourier(model.qg(), &delta_g, tol).unwrap().max_abs_diff(&swap) < 1e-15);
        let back = inverse_fourier(model.qg(), &ComplexMatrix::identity(2), tol).unwrap();
        assert!(back.max_abs_diff(&delta_e) < 1e-15);
    }

    #[test]
    fn z3_transform_is_regular_representation() {
        let model = z(3);
        let a = GroupFunction::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.25, 3.0)]);
        let f = fourier(model.qg(), &model.pi(&a).unwrap(), Tolerance::default()).unwrap();
        assert!(f.max_abs_diff(&model.l(&a).unwrap()) < 1e-14);
    }

    #[test]
    fn non_members_are_rejected() {
        let model = z(2);
        let off_diagonal = ComplexMatrix::permutation(&[1, 0]);
        let err = fourier(model.qg(), &off_diagonal, Tolerance::default()).unwrap_err();
        assert!(matches!(err, FourierError::NotInAlgebra { side: Side::Primal, .. }));
        let not_translation = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(inverse_fourier(model.qg(), &not_translation, Tolerance::default()).is_err());
    }

    #[test]
    fn plancherel_examples() {
        let tol = Tolerance::default();
        let z3 = z(3);
        let a = z3.pi(&GroupFunction::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)])).unwrap();
        let p = plancherel(z3.qg(), &a, tol).unwrap();
        assert!((p.rhs - c(6.0, 0.0)).norm() < 1e-14 && (p.lhs - c(6.0, 0.0)).norm() < 1e-14);
        let zero = plancherel(z3.qg(), &ComplexMatrix::zeros(3, 3), tol).unwrap();
        assert_eq!(zero.lhs, c(0.0, 0.0));
        let z2 = z(2);
        let p = plancherel(z2.qg(), &ComplexMatrix::identity(2), tol).unwrap();
        assert!((p.lhs - c(2.0, 0.0)).norm() < 1e-14 && (p.rhs - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn inversion_on_small_models() {
        let trivial = GroupModel::build(FiniteGroup::trivial());
        assert_eq!(check_inversion(trivial.qg()).deviation(), 0.0);
        for model in [z(6), GroupModel::build(FiniteGroup::dihedral(3).unwrap())] {
            assert!(check_inversion(model.qg()).deviation() <= 1e-10);
            assert!(check_gns_transport(model.qg(), Tolerance::default()).pass);
        }
    }
}
