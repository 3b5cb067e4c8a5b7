use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{linear_combination, ComplexMatrix, LinalgError, Tolerance};

/// Singular values below this fraction of the largest one are treated as
/// numerical zero when ranking a span.
pub const RANK_CUTOFF_RELATIVE: f64 = 1e-8;

// Admission threshold of the pre-orthogonalization pass. Deliberately loose;
// the singular-value cut afterwards decides the rank.
const GRAM_SCHMIDT_FLOOR: f64 = 1e-14;

/// Orthonormal family (trace inner product) of equally shaped matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanBasis {
    rows: usize,
    cols: usize,
    elements: Vec<ComplexMatrix>,
}

impl SpanBasis {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            elements: Vec::new(),
        }
    }

    /// Wraps a family that is already orthonormal, verifying it to `tol`.
    pub fn from_orthonormal(elements: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self, LinalgError> {
        let (rows, cols) = elements.first().map_or((0, 0), ComplexMatrix::shape);
        check_shapes(&elements, rows, cols)?;
        let mut worst = 0.0f64;
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                let expected = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((x.inner(y) - Complex64::new(expected, 0.0)).norm());
            }
        }
        if worst > tol.absolute + tol.relative {
            return Err(LinalgError::NotOrthonormal { deviation: worst });
        }
        Ok(Self { rows, cols, elements })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn coordinates(&self, x: &ComplexMatrix) -> Vec<Complex64> {
        self.elements.iter().map(|b| x.inner(b)).collect()
    }

    pub fn reconstruct(&self, coords: &[Complex64]) -> ComplexMatrix {
        assert_eq!(coords.len(), self.dim(), "reconstruct: coordinate count");
        linear_combination(coords, &self.elements, self.rows, self.cols)
    }

    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.reconstruct(&self.coordinates(x))
    }

    /// Frobenius norm of the component of `x` orthogonal to the span.
    pub fn residual(&self, x: &ComplexMatrix) -> f64 {
        if self.is_empty() {
            return x.frobenius_norm();
        }
        (x - &self.project(x)).frobenius_norm()
    }

    pub fn contains(&self, x: &ComplexMatrix, tol: Tolerance) -> bool {
        x.shape() == self.shape() && self.residual(x) <= tol.absolute + tol.relative * x.frobenius_norm()
    }
}

fn check_shapes(mats: &[ComplexMatrix], rows: usize, cols: usize) -> Result<(), LinalgError> {
    for m in mats {
        if m.shape() != (rows, cols) {
            return Err(LinalgError::DimensionMismatch {
                context: "span member shape",
                expected: rows * cols,
                found: m.rows() * m.cols(),
            });
        }
    }
    Ok(())
}

/// Orthonormal basis of the linear span of `mats`.
///
/// The inputs are first orthogonalized (classical Gram–Schmidt, two passes)
/// to obtain a frame `Q`; the coordinate matrix `C = Q* A` is then
/// decomposed by SVD, so the rank is decided by the singular values of the
/// stacked inputs: those above `max(tol.absolute, 1e-8 · σ_max)` are kept.
pub fn span_basis(mats: &[ComplexMatrix], tol: Tolerance) -> Result<SpanBasis, LinalgError> {
    let Some(first) = mats.first() else {
        return Ok(SpanBasis::empty(0, 0));
    };
    let (rows, cols) = first.shape();
    check_shapes(mats, rows, cols)?;
    let scale = mats.iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(SpanBasis::empty(rows, cols));
    }

    let mut frame: Vec<ComplexMatrix> = Vec::new();
    for m in mats {
        let mut v = m.clone();
        for _ in 0..2 {
            for q in &frame {
                let c = v.inner(q);
                if c != Complex64::new(0.0, 0.0) {
                    v = &v - &q.scale(c);
                }
            }
        }
        let norm = v.frobenius_norm();
        if norm > GRAM_SCHMIDT_FLOOR * scale {
            frame.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
    }
    if frame.is_empty() {
        return Ok(SpanBasis::empty(rows, cols));
    }

    let coords = DMatrix::from_fn(frame.len(), mats.len(), |r, k| mats[k].inner(&frame[r]));
    let svd = coords.svd(true, false);
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sigma_max = svd.singular_values[order[0]];
    let cutoff = tol.absolute.max(RANK_CUTOFF_RELATIVE * sigma_max);

    let elements = order
        .into_iter()
        .take_while(|&s| svd.singular_values[s] > cutoff)
        .map(|s| {
            let weights: Vec<Complex64> = (0..frame.len()).map(|r| u[(r, s)]).collect();
            linear_combination(&weights, &frame, rows, cols)
        })
        .collect();
    Ok(SpanBasis { rows, cols, elements })
}

/// How two subspaces of a common ambient space relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceRelation {
    Equal,
    /// The first span is properly contained in the second.
    ProperSubset,
    /// The first span properly contains the second.
    ProperSuperset,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubspaceComparison {
    pub equal: bool,
    /// Worst residual of a unit basis vector of either span projected onto
    /// the other (the sine of the largest principal angle).
    pub deviation: f64,
    pub relation: SubspaceRelation,
}

pub fn subspace_equal(b1: &SpanBasis, b2: &SpanBasis, tol: Tolerance) -> Result<SubspaceComparison, LinalgError> {
    if !b1.is_empty() && !b2.is_empty() && b1.shape() != b2.shape() {
        return Err(LinalgError::DimensionMismatch {
            context: "subspace ambient dimension",
            expected: b1.rows * b1.cols,
            found: b2.rows * b2.cols,
        });
    }
    let one_in_two = b1.elements.iter().map(|x| b2.residual(x)).fold(0.0, f64::max);
    let two_in_one = b2.elements.iter().map(|x| b1.residual(x)).fold(0.0, f64::max);
    let limit = tol.absolute + tol.relative;
    let relation = match (one_in_two <= limit, two_in_one <= limit) {
        (true, true) => SubspaceRelation::Equal,
        (true, false) => SubspaceRelation::ProperSubset,
        (false, true) => SubspaceRelation::ProperSuperset,
        (false, false) => SubspaceRelation::Incomparable,
    };
    Ok(SubspaceComparison {
        equal: relation == SubspaceRelation::Equal,
        deviation: one_in_two.max(two_in_one),
        relation,
    })
}
