use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

/// Mixed absolute/relative comparison threshold.
///
/// Two numbers agree iff `|x − y| ≤ absolute + relative · max(|x|, |y|)`;
/// matrices agree iff every entry pair does.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-10,
            relative: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64) -> Result<Self, LinalgError> {
        if !(absolute >= 0.0 && relative >= 0.0) || !absolute.is_finite() || !relative.is_finite() {
            return Err(LinalgError::InvalidTolerance { absolute, relative });
        }
        Ok(Self { absolute, relative })
    }

    pub fn absolute(absolute: f64) -> Result<Self, LinalgError> {
        Self::new(absolute, 0.0)
    }

    pub fn threshold(&self, x: f64, y: f64) -> f64 {
        self.absolute + self.relative * x.abs().max(y.abs())
    }

    pub fn close(&self, x: Complex64, y: Complex64) -> bool {
        (x - y).norm() <= self.threshold(x.norm(), y.norm())
    }

    pub fn close_real(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.threshold(x, y)
    }

    pub fn matrices_close(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
        a.shape() == b.shape() && a.as_slice().iter().zip(b.as_slice()).all(|(&x, &y)| self.close(x, y))
    }

    /// Scales both components, used for checks whose natural error is larger
    /// than the entrywise one (subspace angles, for instance).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            absolute: self.absolute * factor,
            relative: self.relative * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_components_rejected() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, f64::NAN).is_err());
        assert!(Tolerance::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn relative_part_scales_with_magnitude() {
        let tol = Tolerance::new(0.0, 1e-3).unwrap();
        assert!(tol.close_real(1000.0, 1000.5));
        assert!(!tol.close_real(1.0, 1.5));
    }

    #[test]
    fn shape_mismatch_is_never_close() {
        let tol = Tolerance::default();
        assert!(!tol.matrices_close(&ComplexMatrix::zeros(2, 2), &ComplexMatrix::zeros(2, 1)));
    }
}
