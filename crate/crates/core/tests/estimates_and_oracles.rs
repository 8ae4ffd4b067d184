use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kryest::dense_funm::{expm_dense, hessenberg_eigenvalues, DenseMatrix, MatrixFunctionSpec, NodeSequence};
use kryest::estimates::{augment, expansion_terms, phi_moments, xi_estimates, NodePolicy};
use kryest::harness::{run, Method, RunSettings};
use kryest::krylov::{arnoldi, lanczos};
use kryest::oracle::{reference_fav, true_error, OracleMethod};
use kryest::sparse::{
    build_convection_diffusion, build_diag_spectrum, convection_diffusion_h, log_norm_neg, read_matrix_market,
    write_matrix_market, CsrMatrix, SpectralInterval,
};
use kryest::vector::{distance, norm2, random_unit_vector};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `n x n` tridiagonal Toeplitz matrix with the given sub-, main and super-diagonal.
fn toeplitz(n: usize, lower: f64, diag: f64, upper: f64) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |i, j| {
        c(if i == j {
            diag
        } else if i == j + 1 {
            lower
        } else if j == i + 1 {
            upper
        } else {
            0.0
        })
    })
}

fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (p, q) = (a.rows(), b.rows());
    DenseMatrix::from_fn(p * q, p * q, |i, j| a[(i / q, j / q)] * b[(i % q, j % q)])
}

fn add(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] + b[(i, j)])
}

#[test]
fn convection_diffusion_matches_dense_kronecker_assembly() {
    let n = 3;
    let (d1, d2) = (96.0, 128.0);
    let a = build_convection_diffusion(n, d1, d2).unwrap();
    let h = convection_diffusion_h(n);
    let (z1, z2) = (d1 * h / 2.0, d2 * h / 2.0);
    let eye = DenseMatrix::identity(n);
    let b = toeplitz(n, 1.0, -2.0, 1.0);
    let c1 = toeplitz(n, 1.0 + z1, -2.0, 1.0 - z1);
    let c2 = toeplitz(n, 1.0 + z2, -2.0, 1.0 - z2);
    let sum = add(
        &add(&kron(&eye, &kron(&eye, &c1)), &kron(&b, &kron(&eye, &eye))),
        &kron(&eye, &kron(&c2, &eye)),
    );
    let expected = sum.scale(c(-1.0 / (h * h)));
    let got = a.to_dense();
    let gap = DenseMatrix::from_fn(27, 27, |i, j| got[(i, j)] - expected[(i, j)]).norm_fro();
    assert!(gap <= 1e-13 * expected.norm_fro(), "{gap:e}");
}

#[test]
fn dense_oracle_matches_kronecker_factor_exponential() {
    // exp of a Kronecker sum is the Kronecker product of the factor exponentials
    let n = 5;
    let h = convection_diffusion_h(n);
    let (z1, z2) = (3.2, 128.0 / 30.0);
    let a = build_convection_diffusion(n, 2.0 * z1 / h, 2.0 * z2 / h).unwrap();
    let v = vec![1.0; a.n()];
    let tau = 0.01;
    let oracle = reference_fav(&a, &v, MatrixFunctionSpec::exp(tau)).unwrap();
    assert_eq!(oracle.method, OracleMethod::DenseKernel);
    let s = tau / (h * h);
    let factor = |lower: f64, upper: f64| -> Vec<f64> {
        let e = expm_dense(&toeplitz(n, lower, -2.0, upper).scale(c(s))).unwrap();
        (0..n).map(|i| (0..n).map(|j| e[(i, j)].re).sum()).collect()
    };
    let (f1, f2, fb) = (factor(1.0 + z1, 1.0 - z1), factor(1.0 + z2, 1.0 - z2), factor(1.0, 1.0));
    let expected: Vec<f64> = (0..n * n * n)
        .map(|r| fb[r / (n * n)] * f2[(r / n) % n] * f1[r % n])
        .collect();
    assert!(distance(&oracle.exact, &expected) <= 1e-12 * norm2(&expected));
}

#[test]
fn diagonal_and_dense_oracles_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in [5, 50, 200] {
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..5.0)).collect();
        let a = CsrMatrix::from_diagonal(&d);
        let v = random_unit_vector(n, n as u64);
        for spec in [
            MatrixFunctionSpec::exp(0.7),
            MatrixFunctionSpec::cos(0.7),
            MatrixFunctionSpec::sin(0.7),
        ] {
            let fast = reference_fav(&a, &v, spec).unwrap();
            assert_eq!(fast.method, OracleMethod::DiagonalExact);
            let dense = spec.apply_dense(&a.to_dense()).unwrap();
            let slow = dense.mul_vec(&v.iter().map(|&x| c(x)).collect::<Vec<_>>()).unwrap();
            let slow: Vec<f64> = slow.iter().map(|z| z.re).collect();
            assert!(distance(&fast.exact, &slow) <= 1e-12 * norm2(&slow), "n={n} {spec}");
        }
    }
}

#[test]
fn log_norm_matches_closed_form_of_symmetric_part() {
    // the convection terms are skew, so the symmetric part is the scaled Laplacian
    let n = 8;
    let h = convection_diffusion_h(n);
    let a = build_convection_diffusion(n, 6.4 / h, 256.0 / 30.0 / h).unwrap();
    let expected = 3.0 * (2.0 * (std::f64::consts::PI * h).cos() - 2.0) / (h * h);
    let got = log_norm_neg(&a, 1e-10).unwrap();
    assert!((got - expected).abs() <= 1e-8 * expected.abs(), "{got} vs {expected}");
}

#[test]
fn xi2_is_first_expansion_term() {
    let n = 5;
    let h = convection_diffusion_h(n);
    let a = build_convection_diffusion(n, 6.4 / h, 256.0 / 30.0 / h).unwrap();
    let v = vec![1.0; a.n()];
    for spec in [
        MatrixFunctionSpec::exp(h * h),
        MatrixFunctionSpec::cos(h * h),
        MatrixFunctionSpec::sin(h * h),
    ] {
        for m in [3, 8, 15] {
            let dec = arnoldi(&a, &v, m, 1e-14).unwrap();
            let (_, est) = xi_estimates(&dec, spec).unwrap();
            let nodes = NodePolicy::Confluent.nodes(&dec, 1).unwrap();
            let terms = expansion_terms(&a, &dec, spec, &nodes, 1).unwrap();
            let first = terms.terms[0].term_norm;
            assert!(
                (first - est.xi2).abs() <= 1e-12 * est.xi2,
                "{spec} m={m}: {first:e} vs {:e}",
                est.xi2
            );
        }
    }
}

#[test]
fn augmented_spectrum_is_base_spectrum_plus_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = rng.gen_range(2..7);
        let h = DenseMatrix::from_fn(m, m, |i, j| {
            if i <= j + 1 {
                c(rng.gen_range(-1.0..1.0))
            } else {
                c(0.0)
            }
        });
        let nodes: Vec<Complex64> = (0..rng.gen_range(1..4)).map(|k| c(3.0 + k as f64)).collect();
        let aug = augment(&h, &NodeSequence::new(nodes.clone()).unwrap()).unwrap();
        let mut expected = hessenberg_eigenvalues(&h).unwrap();
        expected.extend(nodes);
        let mut remaining = hessenberg_eigenvalues(&aug.assembled).unwrap();
        assert_eq!(remaining.len(), expected.len());
        for z in expected {
            let (k, dist) = remaining
                .iter()
                .enumerate()
                .map(|(k, w)| (k, (w - z).norm()))
                .fold((0, f64::INFINITY), |b, x| if x.1 < b.1 { x } else { b });
            assert!(
                dist <= 1e-10 * (1.0 + z.norm()),
                "eigenvalue {z} missing, closest at {dist:e}"
            );
            remaining.swap_remove(k);
        }
    }
}

#[test]
fn moments_are_nested_across_node_counts() {
    let a = build_diag_spectrum(30, SpectralInterval::new(0.0, 2.0).unwrap()).unwrap();
    let dec = lanczos(&a, &random_unit_vector(30, 2), 6, true).unwrap();
    let h = dec.projected.to_dense();
    let nodes = NodeSequence::new((0..5).map(|k| c(0.3 * k as f64)).collect()).unwrap();
    let spec = MatrixFunctionSpec::exp(1.0);
    let all = phi_moments(&h, &nodes, spec).unwrap();
    for k in 1..5 {
        let prefix = phi_moments(&h, &NodeSequence::new(nodes.as_slice()[..k].to_vec()).unwrap(), spec).unwrap();
        for (x, y) in prefix.iter().zip(&all) {
            assert!((x - y).norm() <= 1e-13 * y.norm().max(1e-300));
        }
    }
}

#[test]
fn matrix_market_round_trip_preserves_the_run() {
    let n = 8;
    let h = convection_diffusion_h(n);
    let a = build_convection_diffusion(n, 6.4 / h, 256.0 / 30.0 / h).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("convdiff.mtx");
    write_matrix_market(&a, &path).unwrap();
    let b = read_matrix_market(&path).unwrap();
    let v = vec![1.0; a.n()];
    let settings = RunSettings::new(Method::Arnoldi, MatrixFunctionSpec::exp(h * h), 1e-10, 60);
    let ra = run(&a, &v, &settings, None).unwrap();
    let rb = run(&b, &v, &settings, None).unwrap();
    assert_eq!(ra.records.len(), rb.records.len());
    for (x, y) in ra.records.iter().zip(&rb.records) {
        assert!((x.xi1_rel() - y.xi1_rel()).abs() <= 1e-13 * x.xi1_rel());
        assert!((x.xi2_rel() - y.xi2_rel()).abs() <= 1e-13 * x.xi2_rel());
    }
    assert!(distance(&ra.approx, &rb.approx) <= 1e-13 * norm2(&ra.approx));
}

#[test]
fn estimator_stopping_without_oracle_is_accurate() {
    let a = build_diag_spectrum(1001, SpectralInterval::new(0.0, 40.0).unwrap()).unwrap();
    let v = random_unit_vector(1001, 20130401);
    let spec = MatrixFunctionSpec::exp(0.5);
    let r = run(&a, &v, &RunSettings::new(Method::Lanczos, spec, 1e-10, 200), None).unwrap();
    assert!(r.converged);
    let oracle = reference_fav(&a, &v, spec).unwrap();
    let (_, rel) = true_error(&r.approx, &oracle).unwrap();
    assert!(rel <= 1e-10, "{rel:e}");
}
