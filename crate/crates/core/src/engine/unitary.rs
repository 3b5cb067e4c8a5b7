use num_complex::Complex64;

use super::{CheckReport, EngineError};
use crate::linalg::{flip, ComplexMatrix, Tolerance};

/// Largest `n` for which the dense pentagon check is attempted. Its cost
/// grows as `n⁸`.
pub const DENSE_PENTAGON_LIMIT: usize = 12;

/// A unitary on `H ⊗ H`, `dim H = n`, meant to satisfy the pentagon
/// equation. Permutation unitaries keep their index map so that pentagon
/// checks and conjugations stay exact and cheap.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeUnitary {
    n: usize,
    dense: ComplexMatrix,
    adjoint: ComplexMatrix,
    permutation: Option<Vec<usize>>,
}

impl MultiplicativeUnitary {
    /// Wraps a dense `n² × n²` matrix. Unitarity and the pentagon equation
    /// are not enforced here; they are what the checks report on. A matrix
    /// that happens to be a permutation is recognized as such.
    pub fn from_dense(n: usize, w: ComplexMatrix) -> Result<Self, EngineError> {
        if n == 0 || w.shape() != (n * n, n * n) {
            return Err(EngineError::Shape {
                expected: n * n,
                rows: w.rows(),
                cols: w.cols(),
            });
        }
        if !w.is_finite() {
            return Err(EngineError::NonFinite);
        }
        let permutation = detect_permutation(&w);
        Ok(Self {
            n,
            adjoint: w.adjoint(),
            dense: w,
            permutation,
        })
    }

    /// `W e_a = e_{image[a]}` on the `n²` basis vectors of `H ⊗ H`.
    pub fn from_permutation(n: usize, image: Vec<usize>) -> Result<Self, EngineError> {
        let m = n * n;
        if n == 0 || image.len() != m {
            return Err(EngineError::Shape {
                expected: m,
                rows: image.len(),
                cols: 1,
            });
        }
        let mut seen = vec![false; m];
        for &i in &image {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return Err(EngineError::NotPermutation);
            }
        }
        let dense = ComplexMatrix::permutation(&image);
        Ok(Self {
            n,
            adjoint: dense.transpose(),
            dense,
            permutation: Some(image),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dense(&self) -> &ComplexMatrix {
        &self.dense
    }

    pub fn adjoint(&self) -> &ComplexMatrix {
        &self.adjoint
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.permutation.as_deref()
    }

    /// The dual multiplicative unitary `Ŵ = Σ W* Σ`.
    pub fn dual(&self) -> Self {
        let n = self.n;
        let swap = |a: usize| (a % n) * n + a / n;
        if let Some(image) = &self.permutation {
            // W* e_b = e_a where image[a] = b
            let mut inverse = vec![0; image.len()];
            for (a, &b) in image.iter().enumerate() {
                inverse[b] = a;
            }
            let hat: Vec<usize> = (0..n * n).map(|a| swap(inverse[swap(a)])).collect();
            return Self::from_permutation(n, hat).expect("conjugate of a permutation");
        }
        let s = flip(n);
        let hat = s.matmul(&self.adjoint).matmul(&s);
        Self::from_dense(n, hat).expect("same shape")
    }

    /// `W Y W*`.
    pub fn conjugate(&self, y: &ComplexMatrix) -> ComplexMatrix {
        match &self.permutation {
            Some(image) => {
                let mut out = ComplexMatrix::zeros(y.rows(), y.cols());
                for a in 0..y.rows() {
                    for b in 0..y.cols() {
                        out.set(image[a], image[b], y.get(a, b));
                    }
                }
                out
            }
            None => self.dense.matmul(y).matmul(&self.adjoint),
        }
    }

    /// `W* Y W`.
    pub fn adjoint_conjugate(&self, y: &ComplexMatrix) -> ComplexMatrix {
        match &self.permutation {
            Some(image) => ComplexMatrix::from_fn(y.rows(), y.cols(), |a, b| y.get(image[a], image[b])),
            None => self.adjoint.matmul(y).matmul(&self.dense),
        }
    }

    /// `W Y`.
    pub fn left_mul(&self, y: &ComplexMatrix) -> ComplexMatrix {
        match &self.permutation {
            Some(image) => {
                let mut out = ComplexMatrix::zeros(y.rows(), y.cols());
                for a in 0..y.rows() {
                    for b in 0..y.cols() {
                        out.set(image[a], b, y.get(a, b));
                    }
                }
                out
            }
            None => self.dense.matmul(y),
        }
    }

    /// `W* Y`.
    pub fn adjoint_left_mul(&self, y: &ComplexMatrix) -> ComplexMatrix {
        match &self.permutation {
            Some(image) => ComplexMatrix::from_fn(y.rows(), y.cols(), |a, b| y.get(image[a], b)),
            None => self.adjoint.matmul(y),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        match &self.permutation {
            Some(image) => {
                let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
                for (a, &x) in v.iter().enumerate() {
                    out[image[a]] = x;
                }
                out
            }
            None => self.dense.apply(v),
        }
    }

    pub fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        match &self.permutation {
            Some(image) => image.iter().map(|&b| v[b]).collect(),
            None => self.adjoint.apply(v),
        }
    }

    /// Leg-1 block `W_ij`, so that `W = Σ e_ij ⊗ W_ij`.
    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        crate::linalg::block(&self.dense, self.n, i, j)
    }

    pub fn check_unitarity(&self, tol: Tolerance) -> CheckReport {
        if self.permutation.is_some() {
            return CheckReport::exact(0.0);
        }
        let id = ComplexMatrix::identity(self.n * self.n);
        let dev = self
            .dense
            .matmul(&self.adjoint)
            .max_abs_diff(&id)
            .max(self.adjoint.matmul(&self.dense).max_abs_diff(&id));
        CheckReport::new(dev, 1.0, tol)
    }

    /// Largest entry of `|W₁₂W₁₃W₂₃ − W₂₃W₁₂|`.
    ///
    /// Permutation unitaries are checked exactly on all `n³` basis triples
    /// (deviation 0 or 1). Dense unitaries are checked block by block: the
    /// leg-1 block `(i, j)` of the left side is `Σ_k (W_ik ⊗ W_kj) W` and of
    /// the right side `W (W_ij ⊗ 1)`.
    pub fn check_pentagon(&self, tol: Tolerance) -> Result<CheckReport, EngineError> {
        let n = self.n;
        if let Some(image) = &self.permutation {
            let w = |a: usize, b: usize| {
                let t = image[a * n + b];
                (t / n, t % n)
            };
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (j1, k1) = w(j, k);
                        let (i1, k2) = w(i, k1);
                        let (i2, j2) = w(i1, j1);
                        let (i3, j3) = w(i, j);
                        let (j4, k4) = w(j3, k);
                        if (i2, j2, k2) != (i3, j4, k4) {
                            return Ok(CheckReport::exact(1.0));
                        }
                    }
                }
            }
            return Ok(CheckReport::exact(0.0));
        }
        if n > DENSE_PENTAGON_LIMIT {
            return Err(EngineError::DenseTooLarge {
                n,
                limit: DENSE_PENTAGON_LIMIT,
            });
        }
        let blocks: Vec<ComplexMatrix> = (0..n * n).map(|idx| self.block(idx / n, idx % n)).collect();
        let id = ComplexMatrix::identity(n);
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut sum = ComplexMatrix::zeros(n * n, n * n);
                for k in 0..n {
                    sum = &sum + &crate::linalg::kron(&blocks[i * n + k], &blocks[k * n + j]);
                }
                let lhs = sum.matmul(&self.dense);
                let rhs = self.dense.matmul(&crate::linalg::kron(&blocks[i * n + j], &id));
                dev = dev.max(lhs.max_abs_diff(&rhs));
            }
        }
        Ok(CheckReport::new(dev, 1.0, tol))
    }
}

fn detect_permutation(w: &ComplexMatrix) -> Option<Vec<usize>> {
    let m = w.rows();
    let mut image = vec![usize::MAX; m];
    let mut hit = vec![false; m];
    for i in 0..m {
        for j in 0..m {
            let z = w.get(i, j);
            if z == Complex64::new(1.0, 0.0) {
                if image[j] != usize::MAX || std::mem::replace(&mut hit[i], true) {
                    return None;
                }
                image[j] = i;
            } else if z != Complex64::new(0.0, 0.0) {
                return None;
            }
        }
    }
    image.iter().all(|&i| i != usize::MAX).then_some(image)
}
