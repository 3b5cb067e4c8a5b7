use num_complex::Complex64;
use proptest::prelude::*;
use qgft::fourier::{convolve, fourier, inverse_fourier, pairing};
use qgft::io::parse_group;
use qgft::linalg::{flip, kron, random, span_basis, ComplexMatrix, Tolerance};
use qgft::models::{GroupFunction, GroupModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: [&str; 6] = ["cyclic:3", "cyclic:4", "cyclic:2", "s3", "dihedral:4", "product:cyclic:2xcyclic:2"];

fn tol() -> Tolerance {
    Tolerance::default()
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn function(n: usize) -> impl Strategy<Value = GroupFunction> {
    prop::collection::vec(complex(), n).prop_map(GroupFunction::new)
}

fn model_and_functions(k: usize) -> impl Strategy<Value = (GroupModel, Vec<GroupFunction>)> {
    prop::sample::select(&GROUPS[..]).prop_flat_map(move |spec| {
        let model = GroupModel::build(parse_group(spec).unwrap());
        let n = model.order();
        (Just(model), prop::collection::vec(function(n), k))
    })
}

fn matrix(seed: u64, rows: usize, cols: usize) -> ComplexMatrix {
    random::matrix(&mut ChaCha8Rng::seed_from_u64(seed), rows, cols)
}

fn close(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    a.max_abs_diff(b) <= 1e-9 * (1.0 + a.max_abs().max(b.max_abs()))
}

fn combine(alpha: Complex64, x: &ComplexMatrix, beta: Complex64, y: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.rows(), x.cols(), |i, j| alpha * x.get(i, j) + beta * y.get(i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), p in 1usize..4, q in 1usize..4, r in 1usize..4) {
        let (a, b, c) = (matrix(seed, p, q), matrix(seed ^ 1, q, r), matrix(seed ^ 2, r, p));
        prop_assert!(close(&kron(&kron(&a, &b), &c), &kron(&a, &kron(&b, &c))));
    }

    #[test]
    fn kron_is_multiplicative(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let (a, b) = (matrix(seed, n, n), matrix(seed ^ 1, n, n));
        let (c, d) = (matrix(seed ^ 2, m, m), matrix(seed ^ 3, m, m));
        prop_assert!(close(&kron(&a, &c).matmul(&kron(&b, &d)), &kron(&a.matmul(&b), &c.matmul(&d))));
    }

    #[test]
    fn flip_swaps_tensor_factors(seed in any::<u64>(), n in 1usize..5) {
        let (a, b) = (matrix(seed, n, n), matrix(seed ^ 1, n, n));
        let s = flip(n);
        prop_assert!(close(&s.matmul(&kron(&a, &b)).matmul(&s), &kron(&b, &a)));
        prop_assert!(close(&s.matmul(&s), &ComplexMatrix::identity(n * n)));
    }

    #[test]
    fn span_is_idempotent(seed in any::<u64>(), n in 1usize..4, k in 1usize..6) {
        let mats: Vec<ComplexMatrix> = (0..k as u64).map(|i| matrix(seed ^ i, n, n)).collect();
        let basis = span_basis(&mats, tol()).unwrap();
        prop_assert_eq!(basis.dim(), k.min(n * n));
        let again = span_basis(basis.elements(), tol()).unwrap();
        prop_assert_eq!(again.dim(), basis.dim());
        for x in &mats {
            prop_assert!(basis.residual(x) <= 1e-9 * (1.0 + x.max_abs()));
        }
    }

    #[test]
    fn group_tables_satisfy_axioms(spec in prop::sample::select(&GROUPS[..])) {
        let g = parse_group(spec).unwrap();
        let n = g.order();
        for a in 0..n {
            prop_assert_eq!(g.mult(a, g.identity()), a);
            prop_assert_eq!(g.mult(g.identity(), a), a);
            prop_assert_eq!(g.mult(a, g.inv(a)), g.identity());
            for b in 0..n {
                for c in 0..n {
                    prop_assert_eq!(g.mult(g.mult(a, b), c), g.mult(a, g.mult(b, c)));
                }
            }
        }
    }

    #[test]
    fn fourier_is_linear((model, fs) in model_and_functions(2), alpha in complex(), beta in complex()) {
        let qg = model.qg();
        let (x, y) = (model.pi(&fs[0]).unwrap(), model.pi(&fs[1]).unwrap());
        let lhs = fourier(qg, &combine(alpha, &x, beta, &y), tol()).unwrap();
        let rhs = combine(alpha, &fourier(qg, &x, tol()).unwrap(), beta, &fourier(qg, &y, tol()).unwrap());
        prop_assert!(close(&lhs, &rhs));

        let (u, v) = (model.l(&fs[0]).unwrap(), model.l(&fs[1]).unwrap());
        let lhs = inverse_fourier(qg, &combine(alpha, &u, beta, &v), tol()).unwrap();
        let rhs = combine(alpha, &inverse_fourier(qg, &u, tol()).unwrap(), beta, &inverse_fourier(qg, &v, tol()).unwrap());
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn convolution_is_bilinear((model, fs) in model_and_functions(3), alpha in complex()) {
        let qg = model.qg();
        let [a, b, c] = [0, 1, 2].map(|k| model.pi(&fs[k]).unwrap());
        let one = Complex64::new(1.0, 0.0);
        let lhs = convolve(qg, &combine(alpha, &a, one, &b), &c, tol()).unwrap();
        let rhs = combine(alpha, &convolve(qg, &a, &c, tol()).unwrap(), one, &convolve(qg, &b, &c, tol()).unwrap());
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn pairing_is_bilinear((model, fs) in model_and_functions(3), alpha in complex()) {
        let qg = model.qg();
        let one = Complex64::new(1.0, 0.0);
        let (a1, a2) = (model.pi(&fs[0]).unwrap(), model.pi(&fs[1]).unwrap());
        let b = model.l(&fs[2]).unwrap();
        let lhs = pairing(qg, &b, &combine(alpha, &a1, one, &a2), tol()).unwrap().value();
        let rhs = alpha * pairing(qg, &b, &a1, tol()).unwrap().value() + pairing(qg, &b, &a2, tol()).unwrap().value();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn function_json_round_trip(values in prop::collection::vec(complex(), 1..30)) {
        let f = GroupFunction::new(values);
        let text = serde_json::to_string(&f).unwrap();
        let back: GroupFunction = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn characters_are_orthonormal() {
    for spec in ["cyclic:5", "cyclic:8", "product:cyclic:2xcyclic:4", "product:cyclic:3xcyclic:3"] {
        let g = parse_group(spec).unwrap();
        let n = g.order();
        let chars = g.characters().unwrap().matrix();
        let gram = chars.matmul(&chars.adjoint()).scale(Complex64::new(1.0 / n as f64, 0.0));
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-12, "{spec}");
    }
}
