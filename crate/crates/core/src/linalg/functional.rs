use num_complex::Complex64;

use super::{kron, ComplexMatrix, LinalgError};

/// Normal functional on `B(H)` represented by a density, `ω(x) = trace(ρ x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    density: ComplexMatrix,
}

impl Functional {
    pub fn from_density(density: ComplexMatrix) -> Result<Self, LinalgError> {
        if !density.is_square() {
            return Err(LinalgError::NotSquare {
                context: "functional density",
                rows: density.rows(),
                cols: density.cols(),
            });
        }
        Ok(Self { density })
    }

    /// `x ↦ x[l, k]`, i.e. the density is the matrix unit `e_kl`.
    pub fn matrix_unit(n: usize, k: usize, l: usize) -> Self {
        let mut density = ComplexMatrix::zeros(n, n);
        density.set(k, l, Complex64::new(1.0, 0.0));
        Self { density }
    }

    /// All `n²` matrix-unit functionals, ordered by `(k, l)`.
    pub fn matrix_units(n: usize) -> impl Iterator<Item = Self> {
        (0..n * n).map(move |idx| Self::matrix_unit(n, idx / n, idx % n))
    }

    /// The trace, `x ↦ trace(x)`.
    pub fn trace(n: usize) -> Self {
        Self {
            density: ComplexMatrix::identity(n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            density: ComplexMatrix::zeros(n, n),
        }
    }

    /// Vector functional `x ↦ ⟨x u, v⟩`.
    pub fn vector(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len(), "vector functional: length mismatch");
        // trace(ρ x) = Σ_ij ρ[j,i] x[i,j] must equal Σ_ij conj(v_i) x[i,j] u_j.
        let density = ComplexMatrix::from_fn(u.len(), u.len(), |j, i| v[i].conj() * u[j]);
        Self { density }
    }

    pub fn dim(&self) -> usize {
        self.density.rows()
    }

    pub fn density(&self) -> &ComplexMatrix {
        &self.density
    }

    pub fn evaluate(&self, x: &ComplexMatrix) -> Complex64 {
        assert_eq!(x.shape(), self.density.shape(), "functional: operand shape mismatch");
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.density.get(i, j) * x.get(j, i);
            }
        }
        acc
    }

    pub fn try_evaluate(&self, x: &ComplexMatrix) -> Result<Complex64, LinalgError> {
        if x.shape() != self.density.shape() {
            return Err(LinalgError::DimensionMismatch {
                context: "functional operand",
                expected: self.dim(),
                found: x.rows(),
            });
        }
        Ok(self.evaluate(x))
    }

    /// `ω̄(x) = conj(ω(x*))`, whose density is `ρ*`.
    pub fn conjugate(&self) -> Self {
        Self {
            density: self.density.adjoint(),
        }
    }

    /// `ω₁ ⊗ ω₂` on `H ⊗ H`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            density: kron(&self.density, &other.density),
        }
    }

    /// `ω(1)`.
    pub fn total(&self) -> Complex64 {
        self.density.trace()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            density: self.density.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            density: &self.density + &other.density,
        }
    }
}
