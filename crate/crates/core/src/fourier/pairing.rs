use num_complex::Complex64;
use serde::Serialize;

use super::{fourier_unchecked, inverse_fourier_unchecked, require_member, FourierError};
use crate::engine::{sharp, CheckReport, EngineError, QuantumGroupPair, Side};
use crate::linalg::{kron_vec, ComplexMatrix, Functional, Tolerance};

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// `⟨b|a⟩` by the three Haar-weight routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairingValue {
    /// `φ(a·F⁻¹(b))`.
    pub via_inverse: Complex64,
    /// `φ̂(F(a*)*·b)`.
    pub via_forward: Complex64,
    /// `(φ ⊗ φ̂)((a ⊗ 1)W*(1 ⊗ b))`.
    pub via_w: Complex64,
    /// Largest pairwise distance of the three.
    pub spread: f64,
}

impl PairingValue {
    pub fn value(&self) -> Complex64 {
        self.via_inverse
    }
}

pub fn pairing(qg: &QuantumGroupPair, b: &ComplexMatrix, a: &ComplexMatrix, tol: Tolerance) -> Result<PairingValue, FourierError> {
    require_member(qg, Side::Primal, a, tol)?;
    require_member(qg, Side::Dual, b, tol)?;
    let via_inverse = qg.phi().evaluate(&a.matmul(&inverse_fourier_unchecked(qg, b)));
    let via_forward = qg.phihat().evaluate(&fourier_unchecked(qg, &a.adjoint()).adjoint().matmul(b));

    let n = qg.n();
    let xi = qg.phi().xi();
    let xihat = qg.phihat().xi();
    let v = qg.mu().apply_adjoint(&kron_vec(xi, &b.apply(xihat)));
    let mut av = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            let aij = a.get(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                av[i * n + k] += aij * v[j * n + k];
            }
        }
    }
    let via_w = dot(&av, &kron_vec(xi, xihat));

    let spread = [(via_inverse, via_forward), (via_inverse, via_w), (via_forward, via_w)]
        .iter()
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    Ok(PairingValue {
        via_inverse,
        via_forward,
        via_w,
        spread,
    })
}

/// `⟨b|a⟩ = ⟨Λ̂(b), Λ(a*)⟩`, compared against the first pairing route.
pub fn check_ft_pairing(qg: &QuantumGroupPair, a: &ComplexMatrix, b: &ComplexMatrix, tol: Tolerance) -> Result<CheckReport, FourierError> {
    let value = pairing(qg, b, a, tol)?.via_inverse;
    let inner = dot(&qg.phihat().gns(b), &qg.phi().gns(&a.adjoint()));
    Ok(CheckReport::new((value - inner).norm(), value.norm().max(inner.norm()), tol))
}

/// Functionals generating `b = λ(ω)` and `a = (id ⊗ θ)(W)` for the
/// dual-pairing identities, so that `⟨b|a⟩ = ω(a) = θ(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingSample {
    pub omega1: Functional,
    pub omega2: Functional,
    pub theta1: Functional,
    pub theta2: Functional,
}

/// The three dual-pairing identities over the samples:
///
/// 1. `⟨b₁b₂|a⟩ = (ω₁ ⊗ ω₂)(Δa)`;
/// 2. `⟨b|a₁a₂⟩ = (θ₁ ⊗ θ₂)(Δ̂^cop b)`;
/// 3. `⟨b|S(a)⟩ = ⟨Ŝ⁻¹(b)|a⟩ = (ω̄)♯(a)`.
pub fn check_pairing_axioms(qg: &QuantumGroupPair, samples: &[PairingSample], tol: Tolerance) -> Result<[CheckReport; 3], FourierError> {
    let mu = qg.mu();
    let shat_inv = qg.shat().inverse()?;
    let mut dev = [0.0f64; 3];
    let mut scale = [0.0f64; 3];
    let mut record = |k: usize, values: &[Complex64]| {
        for x in values {
            for y in values {
                dev[k] = dev[k].max((x - y).norm());
            }
            scale[k] = scale[k].max(x.norm());
        }
    };
    for s in samples {
        let b1 = qg.lambda(&s.omega1)?;
        let b2 = qg.lambda(&s.omega2)?;
        let a1 = qg.leg2_slice(&s.theta1)?;
        let a2 = qg.leg2_slice(&s.theta2)?;

        let lhs = s.theta1.evaluate(&b1.matmul(&b2));
        let rhs = s.omega1.tensor(&s.omega2).evaluate(&qg.comultiply(Side::Primal, &a1));
        record(0, &[lhs, rhs]);

        let lhs = s.omega1.evaluate(&a1.matmul(&a2));
        let cop = mu.conjugate(&crate::linalg::kron(&b1, &ComplexMatrix::identity(qg.n())));
        let rhs = s.theta1.tensor(&s.theta2).evaluate(&cop);
        record(1, &[lhs, rhs]);

        let s_a = qg.s().map.apply(qg.m(), &a1);
        let lhs = s.omega1.evaluate(&s_a);
        let rhs = s.theta1.evaluate(&shat_inv.apply(qg.mhat(), &b1));
        let sharp_value = sharp(&s.omega1.conjugate(), &qg.s().map, qg.m()).evaluate(&a1);
        record(2, &[lhs, rhs, sharp_value]);
    }
    Ok([0, 1, 2].map(|k| CheckReport::new(dev[k], scale[k], tol)))
}

impl From<crate::linalg::LinalgError> for FourierError {
    fn from(e: crate::linalg::LinalgError) -> Self {
        FourierError::Engine(EngineError::Linalg(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::models::{GroupFunction, GroupModel};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn z2_pairing_routes_agree_on_the_sum() {
        let model = GroupModel::build(FiniteGroup::cyclic(2).unwrap());
        let tol = Tolerance::default();
        let a = model.pi(&GroupFunction::from_real(&[1.0, 2.0])).unwrap();
        let b = model.l(&GroupFunction::from_real(&[3.0, 4.0])).unwrap();
        let p = pairing(model.qg(), &b, &a, tol).unwrap();
        for v in [p.via_inverse, p.via_forward, p.via_w] {
            assert!((v - c(11.0)).norm() < 1e-13, "{v}");
        }
        assert!(check_ft_pairing(model.qg(), &a, &b, tol).unwrap().pass);
    }

    #[test]
    fn delta_pairings() {
        let model = GroupModel::build(FiniteGroup::cyclic(3).unwrap());
        let tol = Tolerance::default();
        for g in 0..3 {
            for h in 0..3 {
                let a = model.pi(&GroupFunction::delta(3, g)).unwrap();
                let b = model.l(&GroupFunction::delta(3, h)).unwrap();
                let expected = if g == h { 1.0 } else { 0.0 };
                assert!((pairing(model.qg(), &b, &a, tol).unwrap().via_w - c(expected)).norm() < 1e-14);
            }
        }
        let zero = pairing(model.qg(), &ComplexMatrix::identity(3), &ComplexMatrix::zeros(3, 3), tol).unwrap();
        assert_eq!(zero.spread, 0.0);
        assert_eq!(zero.via_inverse, c(0.0));
    }

    #[test]
    fn units_pair_to_haar_overlap() {
        let model = GroupModel::build(FiniteGroup::symmetric(3).unwrap());
        let tol = Tolerance::default();
        let one = ComplexMatrix::identity(6);
        let report = check_ft_pairing(model.qg(), &one, &one, tol).unwrap();
        assert!(report.pass);
        assert!((pairing(model.qg(), &one, &one, tol).unwrap().via_inverse - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn trivial_group_axioms_are_exact() {
        let model = GroupModel::build(FiniteGroup::trivial());
        let f = |v: f64| Functional::from_density(ComplexMatrix::diagonal(&[c(v)])).unwrap();
        let sample = PairingSample {
            omega1: f(2.0),
            omega2: f(-1.5),
            theta1: f(0.5),
            theta2: f(3.0),
        };
        for report in check_pairing_axioms(model.qg(), &[sample], Tolerance::default()).unwrap() {
            assert_eq!(report.deviation, 0.0);
        }
    }
}
