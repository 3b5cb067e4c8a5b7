use num_complex::Complex64;

use super::{CheckReport, EngineError, MultiplicativeUnitary, Side};
use crate::linalg::{span_basis, ComplexMatrix, Functional, SpanBasis, Tolerance};

/// Slices of `W` by all `n²` matrix-unit functionals on the leg that is
/// sliced away: `(id ⊗ ω)(W)` for `M` and `(ω ⊗ id)(W)` for `M̂`.
pub fn slices(mu: &MultiplicativeUnitary, side: Side) -> Vec<ComplexMatrix> {
    slices_of(mu.dense(), mu.n(), side)
}

/// Matrix-unit slices of any operator on `H ⊗ H`, ordered by `(k, l)`.
///
/// The leg-2 slice by the unit `e_kl` is `(i, j) ↦ X[(i,l),(j,k)]` and the
/// leg-1 slice by `e_kl` is the block `X_lk`, so both are read off directly.
pub fn slices_of(x: &ComplexMatrix, n: usize, side: Side) -> Vec<ComplexMatrix> {
    (0..n * n)
        .map(|idx| {
            let (k, l) = (idx / n, idx % n);
            match side {
                Side::Primal => ComplexMatrix::from_fn(n, n, |i, j| x.get(i * n + l, j * n + k)),
                Side::Dual => crate::linalg::block(x, n, l, k),
            }
        })
        .collect()
}

/// Span of the slices, without closure verification.
pub fn slice_span(mu: &MultiplicativeUnitary, side: Side, tol: Tolerance) -> Result<SpanBasis, EngineError> {
    Ok(span_basis(&slices(mu, side), tol)?)
}

/// How far a span is from being a unital *-algebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosureReport {
    pub product_residual: f64,
    pub adjoint_residual: f64,
    pub unit_residual: f64,
}

impl ClosureReport {
    pub fn deviation(&self) -> f64 {
        self.product_residual.max(self.adjoint_residual).max(self.unit_residual)
    }

    pub fn check(&self, tol: Tolerance) -> CheckReport {
        CheckReport::new(self.deviation(), 1.0, tol)
    }
}

/// Residuals of all pairwise products, all adjoints and the unit against
/// the span. Basis elements have unit Frobenius norm, so the residuals are
/// absolute.
pub fn closure(basis: &SpanBasis) -> ClosureReport {
    let els = basis.elements();
    let mut product_residual = 0.0f64;
    for x in els {
        for y in els {
            product_residual = product_residual.max(basis.residual(&x.matmul(y)));
        }
    }
    let adjoint_residual = els.iter().map(|x| basis.residual(&x.adjoint())).fold(0.0, f64::max);
    let n = basis.shape().0;
    let id = ComplexMatrix::identity(n);
    let unit_residual = basis.residual(&id) / (n as f64).sqrt();
    ClosureReport {
        product_residual,
        adjoint_residual,
        unit_residual,
    }
}

/// A slice algebra together with its closure report.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceAlgebra {
    pub basis: SpanBasis,
    pub closure: ClosureReport,
}

fn generate(mu: &MultiplicativeUnitary, side: Side, tol: Tolerance) -> Result<SliceAlgebra, EngineError> {
    let basis = slice_span(mu, side, tol)?;
    let closure = closure(&basis);
    if !closure.check(tol).pass {
        return Err(EngineError::ClosureFailure {
            side,
            deviation: closure.deviation(),
        });
    }
    Ok(SliceAlgebra { basis, closure })
}

/// `M`, the span of `(id ⊗ ω)(W)`.
pub fn generate_m(mu: &MultiplicativeUnitary, tol: Tolerance) -> Result<SliceAlgebra, EngineError> {
    generate(mu, Side::Primal, tol)
}

/// `M̂`, the span of `(ω ⊗ id)(W)`.
pub fn generate_mhat(mu: &MultiplicativeUnitary, tol: Tolerance) -> Result<SliceAlgebra, EngineError> {
    generate(mu, Side::Dual, tol)
}

/// Coefficients of an operator on `H ⊗ H` in the product basis
/// `{B_p ⊗ C_q}` of two orthonormal spans, with the Frobenius norm of the
/// part lying outside their tensor product.
pub fn tensor_coefficients(x: &ComplexMatrix, left: &SpanBasis, right: &SpanBasis) -> Result<(Vec<Vec<Complex64>>, f64), EngineError> {
    let n = left.shape().0;
    let comps = crate::linalg::leg1_components(x, left.elements())?;
    let coeffs: Vec<Vec<Complex64>> = comps.iter().map(|y| right.coordinates(y)).collect();
    let projected: Vec<ComplexMatrix> = coeffs.iter().map(|c| right.reconstruct(c)).collect();
    let assembled = crate::linalg::assemble_leg1(left.elements(), &projected, n);
    Ok((coeffs, (x - &assembled).frobenius_norm()))
}

/// Residual of `X` against `span(left) ⊗ span(right)`.
pub fn tensor_membership(x: &ComplexMatrix, left: &SpanBasis, right: &SpanBasis) -> Result<f64, EngineError> {
    tensor_coefficients(x, left, right).map(|(_, r)| r)
}

/// Matrix-unit functionals, used as a spanning set of `B(H)_*`.
pub fn unit_functionals(n: usize) -> Vec<Functional> {
    Functional::matrix_units(n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> MultiplicativeUnitary {
        let image = (0..n * n).map(|a| (a / n) * n + (a / n + a % n) % n).collect();
        MultiplicativeUnitary::from_permutation(n, image).unwrap()
    }

    fn diagonal_span(n: usize) -> SpanBasis {
        let units = (0..n)
            .map(|k| {
                let mut e = vec![Complex64::new(0.0, 0.0); n];
                e[k] = Complex64::new(1.0, 0.0);
                ComplexMatrix::diagonal(&e)
            })
            .collect::<Vec<_>>();
        span_basis(&units, Tolerance::default()).unwrap()
    }

    #[test]
    fn z2_primal_algebra_is_diagonal() {
        let tol = Tolerance::default();
        let m = generate_m(&z(2), tol).unwrap();
        assert_eq!(m.basis.dim(), 2);
        let cmp = crate::linalg::subspace_equal(&m.basis, &diagonal_span(2), tol).unwrap();
        assert!(cmp.equal);
    }

    #[test]
    fn z2_dual_algebra_is_group_algebra() {
        let tol = Tolerance::default();
        let mhat = generate_mhat(&z(2), tol).unwrap();
        let swap = ComplexMatrix::permutation(&[1, 0]);
        let expected = span_basis(&[ComplexMatrix::identity(2), swap], tol).unwrap();
        assert!(crate::linalg::subspace_equal(&mhat.basis, &expected, tol).unwrap().equal);
        assert!(mhat.closure.deviation() < 1e-14);
    }

    #[test]
    fn identity_unitary_gives_scalars() {
        let mu = MultiplicativeUnitary::from_dense(3, ComplexMatrix::identity(9)).unwrap();
        let tol = Tolerance::default();
        assert_eq!(generate_m(&mu, tol).unwrap().basis.dim(), 1);
        assert_eq!(generate_mhat(&mu, tol).unwrap().basis.dim(), 1);
    }

    #[test]
    fn slices_match_generic_slice_maps() {
        let mu = z(3);
        let by_units = slices(&mu, Side::Primal);
        let by_units_hat = slices(&mu, Side::Dual);
        for (idx, omega) in unit_functionals(3).iter().enumerate() {
            let right = crate::linalg::slice_right(omega, mu.dense()).unwrap();
            let left = crate::linalg::slice_left(omega, mu.dense()).unwrap();
            assert_eq!(by_units[idx], right);
            assert_eq!(by_units_hat[idx], left);
        }
    }

    #[test]
    fn non_algebra_span_is_a_closure_failure() {
        // the flip: its slices are matrix units e_kl, spanning all of B(H),
        // which is an algebra; use a span of two non-commuting units instead
        let tol = Tolerance::default();
        let mut e01 = ComplexMatrix::zeros(2, 2);
        e01.set(0, 1, Complex64::new(1.0, 0.0));
        let basis = span_basis(&[e01], tol).unwrap();
        let report = closure(&basis);
        assert!(report.adjoint_residual > 0.5);
        assert!(!report.check(tol).pass);
    }

    #[test]
    fn w_lies_in_m_tensor_mhat() {
        let tol = Tolerance::default();
        let mu = z(3);
        let m = generate_m(&mu, tol).unwrap();
        let mhat = generate_mhat(&mu, tol).unwrap();
        assert!(tensor_membership(mu.dense(), &m.basis, &mhat.basis).unwrap() < 1e-12);
        assert!(tensor_membership(mu.dense(), &mhat.basis, &m.basis).unwrap() > 0.1);
    }
}
