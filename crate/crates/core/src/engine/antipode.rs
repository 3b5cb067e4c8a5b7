use nalgebra::DMatrix;
use num_complex::Complex64;

use super::algebra::slices_of;
use super::{CheckReport, EngineError, MultiplicativeUnitary, Side};
use crate::linalg::{ComplexMatrix, SpanBasis, Tolerance};

/// Antipodes whose coordinate matrix has a larger condition number are
/// treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Linear map on a span, stored as a matrix acting on orthonormal-basis
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateMap {
    matrix: ComplexMatrix,
}

impl CoordinateMap {
    pub fn new(matrix: ComplexMatrix) -> Self {
        assert!(matrix.is_square(), "coordinate map must be square");
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, basis: &SpanBasis, x: &ComplexMatrix) -> ComplexMatrix {
        basis.reconstruct(&self.matrix.apply(&basis.coordinates(x)))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.matrix.matmul(&other.matrix))
    }
}

/// An antipode assembled from slices, with its inverse when it exists.
#[derive(Clone, Debug, PartialEq)]
pub struct Antipode {
    pub map: CoordinateMap,
    pub inverse: Option<CoordinateMap>,
    /// Least-squares residual of the defining slice relation.
    pub residual: f64,
    pub condition: f64,
}

impl Antipode {
    pub fn from_map(map: CoordinateMap, residual: f64) -> Self {
        let condition = map.matrix().condition_number();
        let inverse = if condition <= SINGULAR_CONDITION {
            map.matrix().inverse().map(CoordinateMap::new)
        } else {
            None
        };
        Self {
            map,
            inverse,
            residual,
            condition,
        }
    }

    pub fn inverse(&self) -> Result<&CoordinateMap, EngineError> {
        self.inverse
            .as_ref()
            .ok_or(EngineError::SingularAntipode { condition: self.condition })
    }

    /// `max |S(xy) − S(y)S(x)|` over basis pairs.
    pub fn check_anti_multiplicative(&self, basis: &SpanBasis, tol: Tolerance) -> CheckReport {
        let images: Vec<ComplexMatrix> = basis.elements().iter().map(|x| self.map.apply(basis, x)).collect();
        let mut dev = 0.0f64;
        let mut scale = 0.0f64;
        for (x, sx) in basis.elements().iter().zip(&images) {
            for (y, sy) in basis.elements().iter().zip(&images) {
                let lhs = self.map.apply(basis, &x.matmul(y));
                let rhs = sy.matmul(sx);
                scale = scale.max(rhs.max_abs());
                dev = dev.max(lhs.max_abs_diff(&rhs));
            }
        }
        CheckReport::new(dev, scale, tol)
    }

    /// Largest coordinate deviation of `S²` from the identity.
    pub fn square_deviation(&self) -> f64 {
        let sq = self.map.matrix().matmul(self.map.matrix());
        sq.max_abs_diff(&ComplexMatrix::identity(sq.rows()))
    }
}

/// Least-squares solution of `S(slice(W)) = slice(W*)` over all matrix-unit
/// slices. On `M` the slices are taken on leg 2, `S((id⊗ω)(W)) =
/// (id⊗ω)(W*)`; on `M̂` on leg 1, `Ŝ((ω⊗id)(W*)) = (ω⊗id)(W)`.
fn from_slices(mu: &MultiplicativeUnitary, side: Side, basis: &SpanBasis, tol: Tolerance) -> Result<Antipode, EngineError> {
    let n = mu.n();
    let (sources, targets) = match side {
        Side::Primal => (slices_of(mu.dense(), n, side), slices_of(mu.adjoint(), n, side)),
        Side::Dual => (slices_of(mu.adjoint(), n, side), slices_of(mu.dense(), n, side)),
    };
    let d = basis.dim();
    let count = sources.len();
    let coords = |mats: &[ComplexMatrix]| {
        let cols: Vec<Vec<Complex64>> = mats.iter().map(|m| basis.coordinates(m)).collect();
        DMatrix::from_fn(d, count, |r, c| cols[c][r])
    };
    let c = coords(&sources);
    let t = coords(&targets);

    let mut residual = 0.0f64;
    let mut scale = 0.0f64;
    for m in sources.iter().chain(&targets) {
        residual = residual.max(basis.residual(m));
        scale = scale.max(m.frobenius_norm());
    }

    let svd = c.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let pinv = svd
        .pseudo_inverse(1e-8 * sigma_max.max(f64::MIN_POSITIVE))
        .map_err(|_| EngineError::InconsistentSlices {
            side,
            residual: f64::INFINITY,
        })?;
    let s = &t * &pinv;
    let fit = &s * &c - &t;
    for col in 0..count {
        residual = residual.max(fit.column(col).norm());
    }
    if residual > tol.absolute + tol.relative * scale {
        return Err(EngineError::InconsistentSlices { side, residual });
    }
    let map = CoordinateMap::new(ComplexMatrix::from_fn(d, d, |i, j| s[(i, j)]));
    Ok(Antipode::from_map(map, residual))
}

/// Worst `‖S(slice(W)) − slice(W*)‖` over the defining slices, for any map
/// on the span, with the largest target norm as scale.
pub fn slice_consistency(mu: &MultiplicativeUnitary, side: Side, basis: &SpanBasis, map: &CoordinateMap, tol: Tolerance) -> CheckReport {
    let n = mu.n();
    let (sources, targets) = match side {
        Side::Primal => (slices_of(mu.dense(), n, side), slices_of(mu.adjoint(), n, side)),
        Side::Dual => (slices_of(mu.adjoint(), n, side), slices_of(mu.dense(), n, side)),
    };
    let mut dev = 0.0f64;
    let mut scale = 0.0f64;
    for (x, t) in sources.iter().zip(&targets) {
        dev = dev.max(map.apply(basis, x).max_abs_diff(t));
        scale = scale.max(t.max_abs());
    }
    CheckReport::new(dev, scale, tol)
}

/// `S` on `M`.
pub fn antipode_from_slices(mu: &MultiplicativeUnitary, m: &SpanBasis, tol: Tolerance) -> Result<Antipode, EngineError> {
    from_slices(mu, Side::Primal, m, tol)
}

/// `Ŝ` on `M̂`.
pub fn antipode_hat_from_slices(mu: &MultiplicativeUnitary, mhat: &SpanBasis, tol: Tolerance) -> Result<Antipode, EngineError> {
    from_slices(mu, Side::Dual, mhat, tol)
}
