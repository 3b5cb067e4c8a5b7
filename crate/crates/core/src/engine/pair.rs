use num_complex::Complex64;

use super::algebra::{generate_m, generate_mhat, slice_span, tensor_membership};
use super::antipode::{antipode_from_slices, antipode_hat_from_slices, Antipode};
use super::comult::comultiply_side;
use super::weight::{haar_vectors, Weight};
use super::{CheckReport, EngineError, MultiplicativeUnitary, Side};
use crate::linalg::{kron, slice_left, slice_right, subspace_equal, ComplexMatrix, Functional, SpanBasis, SubspaceComparison, Tolerance};

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Everything the Fourier and pairing layers consume: `W`, orthonormal
/// bases of `M` and `M̂`, the Haar weights and both antipodes.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGroupPair {
    mu: MultiplicativeUnitary,
    m: SpanBasis,
    mhat: SpanBasis,
    phi: Weight,
    phihat: Weight,
    s: Antipode,
    shat: Antipode,
}

impl QuantumGroupPair {
    /// Derives the whole structure from `W` alone.
    pub fn from_unitary(mu: MultiplicativeUnitary, tol: Tolerance) -> Result<Self, EngineError> {
        let m = generate_m(&mu, tol)?.basis;
        let mhat = generate_mhat(&mu, tol)?.basis;
        let (phi, phihat) = haar_vectors(&mu)?;
        for (side, weight, basis) in [(Side::Primal, &phi, &m), (Side::Dual, &phihat, &mhat)] {
            let kernel = weight.kernel_dimension(basis, tol)?;
            if kernel > 0 {
                return Err(EngineError::NotFaithful { side, kernel });
            }
        }
        let s = antipode_from_slices(&mu, &m, tol)?;
        let shat = antipode_hat_from_slices(&mu, &mhat, tol)?;
        Ok(Self {
            mu,
            m,
            mhat,
            phi,
            phihat,
            s,
            shat,
        })
    }

    /// Assembles a pair from independently known parts (closed forms for a
    /// group, for instance). No consistency is checked here.
    pub fn from_parts(
        mu: MultiplicativeUnitary,
        m: SpanBasis,
        mhat: SpanBasis,
        phi: Weight,
        phihat: Weight,
        s: Antipode,
        shat: Antipode,
    ) -> Self {
        Self {
            mu,
            m,
            mhat,
            phi,
            phihat,
            s,
            shat,
        }
    }

    pub fn mu(&self) -> &MultiplicativeUnitary {
        &self.mu
    }

    pub fn n(&self) -> usize {
        self.mu.n()
    }

    pub fn m(&self) -> &SpanBasis {
        &self.m
    }

    pub fn mhat(&self) -> &SpanBasis {
        &self.mhat
    }

    pub fn basis(&self, side: Side) -> &SpanBasis {
        match side {
            Side::Primal => &self.m,
            Side::Dual => &self.mhat,
        }
    }

    pub fn phi(&self) -> &Weight {
        &self.phi
    }

    pub fn phihat(&self) -> &Weight {
        &self.phihat
    }

    pub fn weight(&self, side: Side) -> &Weight {
        match side {
            Side::Primal => &self.phi,
            Side::Dual => &self.phihat,
        }
    }

    pub fn s(&self) -> &Antipode {
        &self.s
    }

    pub fn shat(&self) -> &Antipode {
        &self.shat
    }

    pub fn antipode(&self, side: Side) -> &Antipode {
        match side {
            Side::Primal => &self.s,
            Side::Dual => &self.shat,
        }
    }

    pub fn comultiply(&self, side: Side, x: &ComplexMatrix) -> ComplexMatrix {
        comultiply_side(&self.mu, side, x)
    }

    /// `λ(ω) = (ω ⊗ id)(W) ∈ M̂`.
    pub fn lambda(&self, omega: &Functional) -> Result<ComplexMatrix, EngineError> {
        Ok(slice_left(omega, self.mu.dense())?)
    }

    /// `λ̂(θ) = (id ⊗ θ)(W*) ∈ M`.
    pub fn lambda_hat(&self, theta: &Functional) -> Result<ComplexMatrix, EngineError> {
        Ok(slice_right(theta, self.mu.adjoint())?)
    }

    /// `(id ⊗ θ)(W) ∈ M`.
    pub fn leg2_slice(&self, theta: &Functional) -> Result<ComplexMatrix, EngineError> {
        Ok(slice_right(theta, self.mu.dense())?)
    }

    /// Residual of `x` against the span of the given side.
    pub fn membership(&self, side: Side, x: &ComplexMatrix) -> f64 {
        if x.shape() != (self.n(), self.n()) {
            return f64::INFINITY;
        }
        self.basis(side).residual(x)
    }

    /// `W ∈ M ⊗ M̂`.
    pub fn check_w_membership(&self, tol: Tolerance) -> Result<CheckReport, EngineError> {
        let r = tensor_membership(self.mu.dense(), &self.m, &self.mhat)?;
        Ok(CheckReport::new(r, 1.0, tol))
    }

    /// `⟨Λ̂((ω⊗id)(W)), Λ(x)⟩ = ω(x*)` for the given `ω` and all basis `x`.
    pub fn check_phihat(&self, omegas: &[Functional], tol: Tolerance) -> Result<CheckReport, EngineError> {
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for omega in omegas {
            let lhs_vec = self.phihat.gns(&self.lambda(omega)?);
            for x in self.m.elements() {
                let rhs = omega.evaluate(&x.adjoint());
                dev = dev.max((dot(&lhs_vec, &self.phi.gns(x)) - rhs).norm());
                scale = scale.max(rhs.norm());
            }
        }
        Ok(CheckReport::new(dev, scale, tol))
    }

    /// `⟨Λ((id⊗ω)(W*)), Λ̂(y)⟩ = ω(y*)` for the given `ω` and all basis `y`.
    pub fn check_phihat_dual(&self, omegas: &[Functional], tol: Tolerance) -> Result<CheckReport, EngineError> {
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for omega in omegas {
            let lhs_vec = self.phi.gns(&self.lambda_hat(omega)?);
            for y in self.mhat.elements() {
                let rhs = omega.evaluate(&y.adjoint());
                dev = dev.max((dot(&lhs_vec, &self.phihat.gns(y)) - rhs).norm());
                scale = scale.max(rhs.norm());
            }
        }
        Ok(CheckReport::new(dev, scale, tol))
    }

    /// The three product laws of slice elements, for each pair `(ω₁, ω₂)`:
    ///
    /// * `λ(ω₁)λ(ω₂) = λ(μ)` with `μ = (ω₁⊗ω₂)∘Δ`, density `Tr₁(W(ρ₁⊗ρ₂)W*)`;
    /// * `(id⊗ω₂)(W*)(id⊗ω₁)(W*) = (id⊗ν)(W*)` and
    ///   `(id⊗ω₁)(W)(id⊗ω₂)(W) = (id⊗ν)(W)` with `ν = (ω₁⊗ω₂)∘Δ̂^cop`,
    ///   density `Tr₂(W*(ρ₁⊗ρ₂)W)`.
    pub fn check_product_laws(&self, pairs: &[(Functional, Functional)], tol: Tolerance) -> Result<CheckReport, EngineError> {
        let n = self.n();
        let trace = Functional::trace(n);
        let w = self.mu.dense();
        let wa = self.mu.adjoint();
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (o1, o2) in pairs {
            let rho = kron(o1.density(), o2.density());
            let mu_density = slice_left(&trace, &self.mu.conjugate(&rho))?;
            let nu_density = slice_right(&trace, &self.mu.adjoint_conjugate(&rho))?;
            let mu_f = Functional::from_density(mu_density)?;
            let nu_f = Functional::from_density(nu_density)?;

            let lhs1 = slice_left(o1, w)?.matmul(&slice_left(o2, w)?);
            let rhs1 = slice_left(&mu_f, w)?;
            let lhs2 = slice_right(o2, wa)?.matmul(&slice_right(o1, wa)?);
            let rhs2 = slice_right(&nu_f, wa)?;
            let lhs3 = slice_right(o1, w)?.matmul(&slice_right(o2, w)?);
            let rhs3 = slice_right(&nu_f, w)?;
            for (l, r) in [(lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3)] {
                dev = dev.max(l.max_abs_diff(&r));
                scale = scale.max(r.max_abs());
            }
        }
        Ok(CheckReport::new(dev, scale, tol))
    }
}

/// Span comparisons behind the double-dual check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PontryaginReport {
    /// `M̂` of `Ŵ` against `M` of `W`.
    pub primal: SubspaceComparison,
    /// `M` of `Ŵ` against `M̂` of `W`.
    pub dual: SubspaceComparison,
}

impl PontryaginReport {
    pub fn deviation(&self) -> f64 {
        self.primal.deviation.max(self.dual.deviation)
    }

    pub fn equal(&self) -> bool {
        self.primal.equal && self.dual.equal
    }
}

/// Builds `Ŵ = ΣW*Σ` and compares its slice algebras with those of `W`,
/// crosswise.
pub fn pontryagin_check(
    mu: &MultiplicativeUnitary,
    m: &SpanBasis,
    mhat: &SpanBasis,
    tol: Tolerance,
) -> Result<PontryaginReport, EngineError> {
    let hat = mu.dual();
    let hat_m = slice_span(&hat, Side::Primal, tol)?;
    let hat_mhat = slice_span(&hat, Side::Dual, tol)?;
    Ok(PontryaginReport {
        primal: subspace_equal(&hat_mhat, m, tol)?,
        dual: subspace_equal(&hat_m, mhat, tol)?,
    })
}
