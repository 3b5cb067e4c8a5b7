use num_complex::Complex64;

use super::algebra::tensor_coefficients;
use super::{CheckReport, EngineError, MultiplicativeUnitary, Side};
use crate::linalg::{kron, ComplexMatrix, SpanBasis, Tolerance};

fn swap_legs(x: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let s = |a: usize| (a % n) * n + a / n;
    ComplexMatrix::from_fn(x.rows(), x.cols(), |a, b| x.get(s(a), s(b)))
}

/// `Δx = W*(1 ⊗ x)W`.
pub fn comultiply(mu: &MultiplicativeUnitary, x: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(mu.n());
    mu.adjoint_conjugate(&kron(&id, x))
}

/// `Δ̂y = Σ W(y ⊗ 1)W* Σ`.
pub fn dual_comultiply(mu: &MultiplicativeUnitary, y: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(mu.n());
    swap_legs(&mu.conjugate(&kron(y, &id)), mu.n())
}

/// `Δ̂^cop y = W(y ⊗ 1)W*`, the co-opposite of [`dual_comultiply`].
pub fn dual_comultiply_cop(mu: &MultiplicativeUnitary, y: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(mu.n());
    mu.conjugate(&kron(y, &id))
}

pub fn comultiply_side(mu: &MultiplicativeUnitary, side: Side, x: &ComplexMatrix) -> ComplexMatrix {
    match side {
        Side::Primal => comultiply(mu, x),
        Side::Dual => dual_comultiply(mu, x),
    }
}

/// Structure constants `Δ(B_m) = Σ D^m[p,q] B_p ⊗ B_q` of a
/// comultiplication on an orthonormal basis, with the worst residual of
/// `Δ(B_m)` outside `span ⊗ span`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub constants: Vec<Vec<Vec<Complex64>>>,
    pub membership_residual: f64,
}

pub fn structure_constants(mu: &MultiplicativeUnitary, side: Side, basis: &SpanBasis) -> Result<StructureConstants, EngineError> {
    let mut constants = Vec::with_capacity(basis.dim());
    let mut membership_residual = 0.0f64;
    for b in basis.elements() {
        let (d, r) = tensor_coefficients(&comultiply_side(mu, side, b), basis, basis)?;
        membership_residual = membership_residual.max(r);
        constants.push(d);
    }
    Ok(StructureConstants {
        constants,
        membership_residual,
    })
}

/// Coassociativity on a basis, computed from structure constants.
///
/// In the orthonormal triple basis `B_r ⊗ B_s ⊗ B_q` the coefficients of
/// `(Δ⊗id)Δ(B_m)` are `Σ_p D^m[p,q] D^p[r,s]` and those of `(id⊗Δ)Δ(B_m)`
/// are `Σ_k D^m[r,k] D^k[s,q]`; the Frobenius distance of the two operators
/// equals the distance of these coefficient arrays. The reported deviation
/// is the larger of that distance and the membership residual, and bounds
/// the entrywise deviation of the operators.
pub fn check_coassociativity(
    mu: &MultiplicativeUnitary,
    side: Side,
    basis: &SpanBasis,
    tol: Tolerance,
) -> Result<CheckReport, EngineError> {
    let sc = structure_constants(mu, side, basis)?;
    let d = basis.dim();
    let dm = &sc.constants;
    let mut dev = 0.0f64;
    for m in 0..d {
        let mut sq = 0.0;
        for r in 0..d {
            for s in 0..d {
                for q in 0..d {
                    let mut t1 = Complex64::new(0.0, 0.0);
                    let mut t2 = Complex64::new(0.0, 0.0);
                    for k in 0..d {
                        t1 += dm[m][k][q] * dm[k][r][s];
                        t2 += dm[m][r][k] * dm[k][s][q];
                    }
                    sq += (t1 - t2).norm_sqr();
                }
            }
        }
        dev = dev.max(sq.sqrt());
    }
    Ok(CheckReport::new(dev.max(sc.membership_residual), 1.0, tol))
}
