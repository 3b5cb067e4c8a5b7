//! Tensor-leg machinery on `H ⊗ H` and `H ⊗ H ⊗ H`.
//!
//! Index convention (normative for the whole crate): the basis vector
//! `e_i ⊗ e_k` of `H ⊗ H` has index `i·n + k`, so leg 1 is the major index.
//! An operator `X` on `H ⊗ H` therefore has entries `X[(i,k),(j,l)]` and its
//! leg-1 block `(i, j)` is the `n × n` matrix `(k, l) ↦ X[(i,k),(j,l)]`.

use num_complex::Complex64;

use super::{ComplexMatrix, Functional, LinalgError};

/// Placement of a two-leg operator inside `H ⊗ H ⊗ H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leg {
    L12,
    L13,
    L23,
}

/// Kronecker product, `(A⊗B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a.get(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out.set(i * rb + k, j * cb + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// The flip `Σ(u ⊗ v) = v ⊗ u` on `H ⊗ H` with `dim H = n`.
pub fn flip(n: usize) -> ComplexMatrix {
    let image: Vec<usize> = (0..n * n).map(|idx| (idx % n) * n + idx / n).collect();
    ComplexMatrix::permutation(&image)
}

fn check_two_leg(x: &ComplexMatrix, n: usize, context: &'static str) -> Result<(), LinalgError> {
    if x.rows() != n * n || x.cols() != n * n {
        return Err(LinalgError::DimensionMismatch {
            context,
            expected: n * n,
            found: if x.rows() != n * n { x.rows() } else { x.cols() },
        });
    }
    Ok(())
}

/// Dense embedding of a two-leg operator into `H ⊗ H ⊗ H`.
///
/// Leg 13 is the leg-12 embedding conjugated by the flip of legs 2 and 3.
/// Memory grows as `n⁶`; intended for small `n` and for cross-checking the
/// streamed kernels.
pub fn leg_embed(x: &ComplexMatrix, leg: Leg, n: usize) -> Result<ComplexMatrix, LinalgError> {
    check_two_leg(x, n, "leg_embed operand")?;
    let id = ComplexMatrix::identity(n);
    Ok(match leg {
        Leg::L12 => kron(x, &id),
        Leg::L23 => kron(&id, x),
        Leg::L13 => {
            let swap23 = kron(&id, &flip(n));
            swap23.matmul(&kron(x, &id)).matmul(&swap23)
        }
    })
}

/// Leg-1 block `(i, j)` of an operator on `H ⊗ H`.
pub fn block(x: &ComplexMatrix, n: usize, i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |k, l| x.get(i * n + k, j * n + l))
}

/// `(ω ⊗ id)(X)`: for `X = Σ A_k ⊗ B_k` returns `Σ ω(A_k) B_k`.
pub fn slice_left(omega: &Functional, x: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = omega.dim();
    check_two_leg(x, n, "slice_left operand")?;
    let rho = omega.density();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let w = rho.get(j, i);
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    out.add_at(k, l, w * x.get(i * n + k, j * n + l));
                }
            }
        }
    }
    Ok(out)
}

/// `(id ⊗ θ)(X)`: for `X = Σ A_k ⊗ B_k` returns `Σ θ(B_k) A_k`.
pub fn slice_right(theta: &Functional, x: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = theta.dim();
    check_two_leg(x, n, "slice_right operand")?;
    let rho = theta.density();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                for l in 0..n {
                    let w = rho.get(l, k);
                    if w != Complex64::new(0.0, 0.0) {
                        acc += w * x.get(i * n + k, j * n + l);
                    }
                }
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// `(⟨bra| ⊗ 1) X (|ket⟩ ⊗ 1)`, the leg-1 slice by the vector functional
/// `x ↦ ⟨x·ket, bra⟩`.
pub fn contract_left(x: &ComplexMatrix, bra: &[Complex64], ket: &[Complex64]) -> ComplexMatrix {
    let n = bra.len();
    assert_eq!(ket.len(), n);
    assert_eq!(x.shape(), (n * n, n * n), "contract_left: operand shape");
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        if bra[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..n {
            let w = bra[i].conj() * ket[j];
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    out.add_at(k, l, w * x.get(i * n + k, j * n + l));
                }
            }
        }
    }
    out
}

/// `(1 ⊗ ⟨bra|) X (1 ⊗ |ket⟩)`.
pub fn contract_right(x: &ComplexMatrix, bra: &[Complex64], ket: &[Complex64]) -> ComplexMatrix {
    let n = bra.len();
    assert_eq!(ket.len(), n);
    assert_eq!(x.shape(), (n * n, n * n), "contract_right: operand shape");
    ComplexMatrix::from_fn(n, n, |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            if bra[k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for l in 0..n {
                acc += bra[k].conj() * ket[l] * x.get(i * n + k, j * n + l);
            }
        }
        acc
    })
}

/// Tensor product of two vectors, leg-1 major.
pub fn kron_vec(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect()
}

/// Coefficients `Y_m` with `X = Σ_m B_m ⊗ Y_m + R`, where `B_m` is an
/// orthonormal family on leg 1 and `R` is orthogonal to every `B_m ⊗ (·)`.
pub fn leg1_components(x: &ComplexMatrix, leg1: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>, LinalgError> {
    leg1.iter()
        .map(|b| slice_left(&Functional::from_density(b.adjoint())?, x))
        .collect()
}

/// Reassembles `Σ_m B_m ⊗ Y_m`.
pub fn assemble_leg1(leg1: &[ComplexMatrix], components: &[ComplexMatrix], n: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(n * n, n * n);
    for (b, y) in leg1.iter().zip(components) {
        for i in 0..n {
            for j in 0..n {
                let bij = b.get(i, j);
                if bij == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        out.add_at(i * n + k, j * n + l, bij * y.get(k, l));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(rows: usize, cols: usize, seed: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |i, j| {
            let t = seed + (i * cols + j) as f64;
            c((t * 1.37).sin(), (t * 0.71).cos())
        })
    }

    fn basis_vec(n: usize, idx: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); n];
        v[idx] = c(1.0, 0.0);
        v
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_swap_with_identity_is_block_swap() {
        let x = ComplexMatrix::permutation(&[1, 0]);
        let k = kron(&x, &ComplexMatrix::identity(2));
        assert_eq!(k, ComplexMatrix::permutation(&[2, 3, 0, 1]));
    }

    #[test]
    fn kron_index_formula() {
        let a = sample(2, 2, 0.3);
        let b = sample(3, 3, 1.9);
        let k = kron(&a, &b);
        assert_eq!(k.get(5, 5), a.get(1, 1) * b.get(2, 2));
        assert_eq!(k.get(4, 2), a.get(1, 0) * b.get(1, 2));
    }

    #[test]
    fn flip_small_cases() {
        assert_eq!(flip(1), ComplexMatrix::identity(1));
        let f = flip(2);
        // (0,1) -> (1,0): index 1 -> index 2
        assert_eq!(f.apply(&basis_vec(4, 1)), basis_vec(4, 2));
        assert_eq!(f.apply(&basis_vec(4, 0)), basis_vec(4, 0));
        assert_eq!(f.apply(&basis_vec(4, 3)), basis_vec(4, 3));
        assert_eq!(f.matmul(&f), ComplexMatrix::identity(4));
    }

    #[test]
    fn leg_embed_identity_and_flip_action() {
        let id = ComplexMatrix::identity(4);
        assert_eq!(leg_embed(&id, Leg::L12, 2).unwrap(), ComplexMatrix::identity(8));
        // e0⊗e1⊗e0 (index 2) -> e1⊗e0⊗e0 (index 4)
        let s12 = leg_embed(&flip(2), Leg::L12, 2).unwrap();
        assert_eq!(s12.apply(&basis_vec(8, 2)), basis_vec(8, 4));
    }

    #[test]
    fn leg13_acts_on_outer_legs() {
        let n = 2;
        let a = sample(2, 2, 0.1);
        let b = sample(2, 2, 2.2);
        let x = kron(&a, &b);
        let embedded = leg_embed(&x, Leg::L13, n).unwrap();
        let expected = kron(&kron(&a, &ComplexMatrix::identity(n)), &b);
        assert!(embedded.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn leg_embed_rejects_wrong_shape() {
        assert!(leg_embed(&ComplexMatrix::identity(3), Leg::L12, 2).is_err());
    }

    #[test]
    fn slices_of_rank_one_tensor() {
        let a = sample(3, 3, 0.5);
        let b = sample(3, 3, 4.0);
        let x = kron(&a, &b);
        let tr = Functional::trace(3);
        assert!(slice_left(&tr, &x).unwrap().max_abs_diff(&b.scale(a.trace())) < 1e-13);
        assert!(slice_right(&tr, &x).unwrap().max_abs_diff(&a.scale(b.trace())) < 1e-13);
        let zero = Functional::zero(3);
        assert_eq!(slice_left(&zero, &x).unwrap(), ComplexMatrix::zeros(3, 3));
        assert_eq!(slice_right(&zero, &x).unwrap(), ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn contractions_match_vector_functional_slices() {
        let n = 3;
        let x = sample(9, 9, 0.7);
        let u: Vec<_> = (0..n).map(|i| c(i as f64, 1.0)).collect();
        let v: Vec<_> = (0..n).map(|i| c(1.0, -(i as f64))).collect();
        let via_slice = slice_left(&Functional::vector(&v, &u), &x).unwrap();
        assert!(contract_left(&x, &u, &v).max_abs_diff(&via_slice) < 1e-13);
        let via_slice = slice_right(&Functional::vector(&v, &u), &x).unwrap();
        assert!(contract_right(&x, &u, &v).max_abs_diff(&via_slice) < 1e-13);
    }

    #[test]
    fn leg1_decomposition_reassembles() {
        let n = 2;
        let units: Vec<_> = (0..4)
            .map(|idx| {
                let mut m = ComplexMatrix::zeros(2, 2);
                m.set(idx / 2, idx % 2, c(1.0, 0.0));
                m
            })
            .collect();
        let x = sample(4, 4, 3.3);
        let comps = leg1_components(&x, &units).unwrap();
        assert!(assemble_leg1(&units, &comps, n).max_abs_diff(&x) < 1e-15);
    }
}
