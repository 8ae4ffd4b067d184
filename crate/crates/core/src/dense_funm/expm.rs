//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! (degrees 3, 5, 7, 9, 13 selected from the 1-norm), plus cosine and sine
//! through complex exponentials.

use num_complex::Complex64;

use super::matrix::DenseMatrix;
use super::scalar::{gemm, lu_solve, norm_one, Scalar};
use crate::error::{KrylovError, Result};

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.53939833006323e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// more squarings than this means the result cannot be represented anyway
const MAX_SQUARINGS: i32 = 1100;

/// `e^M` for a square matrix.
pub fn expm_dense(m: &DenseMatrix) -> Result<DenseMatrix> {
    let n = m.ensure_square()?;
    if !m.is_finite() {
        return Err(KrylovError::invalid("expm_dense: non-finite entries"));
    }
    let data = if m.is_real() {
        expm_generic(n, &m.real_parts())?
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect()
    } else {
        expm_generic(n, m.as_slice())?
    };
    DenseMatrix::from_vec(n, n, data)
}

/// `(cos M, sin M)`.
pub fn cos_sin_dense(m: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let i = Complex64::new(0.0, 1.0);
    let ep = expm_dense(&m.scale(i))?;
    if m.is_real() {
        return Ok((ep.re(), ep.im()));
    }
    let em = expm_dense(&m.scale(-i))?;
    let cos = (&ep + &em).scale(Complex64::new(0.5, 0.0));
    let sin = (&ep - &em).scale(Complex64::new(0.0, -0.5));
    Ok((cos, sin))
}

fn axpy_into<T: Scalar>(acc: &mut [T], alpha: f64, x: &[T]) {
    let a = T::from_real(alpha);
    for (y, &xi) in acc.iter_mut().zip(x) {
        *y += a * xi;
    }
}

fn add_identity<T: Scalar>(n: usize, acc: &mut [T], alpha: f64) {
    for i in 0..n {
        acc[i * n + i] += T::from_real(alpha);
    }
}

/// Returns (U, V) with the Padé approximant r = (V - U)^{-1} (V + U).
fn pade_low<T: Scalar>(n: usize, a: &[T], b: &[f64]) -> (Vec<T>, Vec<T>) {
    let a2 = gemm(n, n, n, a, a);
    let mut powers = vec![a2];
    let deg = b.len() - 1;
    for _ in 1..deg / 2 {
        let last = powers.last().unwrap();
        let next = gemm(n, n, n, last, &powers[0]);
        powers.push(next);
    }
    // odd part (before multiplying by A) and even part
    let mut u_inner = vec![T::zero(); n * n];
    let mut v = vec![T::zero(); n * n];
    add_identity(n, &mut u_inner, b[1]);
    add_identity(n, &mut v, b[0]);
    for (k, p) in powers.iter().enumerate() {
        let even = 2 * (k + 1);
        axpy_into(&mut v, b[even], p);
        axpy_into(&mut u_inner, b[even + 1], p);
    }
    let u = gemm(n, n, n, a, &u_inner);
    (u, v)
}

fn pade13<T: Scalar>(n: usize, a: &[T]) -> (Vec<T>, Vec<T>) {
    let b = &B13;
    let a2 = gemm(n, n, n, a, a);
    let a4 = gemm(n, n, n, &a2, &a2);
    let a6 = gemm(n, n, n, &a4, &a2);

    let mut t = vec![T::zero(); n * n];
    axpy_into(&mut t, b[13], &a6);
    axpy_into(&mut t, b[11], &a4);
    axpy_into(&mut t, b[9], &a2);
    let mut u_inner = gemm(n, n, n, &a6, &t);
    axpy_into(&mut u_inner, b[7], &a6);
    axpy_into(&mut u_inner, b[5], &a4);
    axpy_into(&mut u_inner, b[3], &a2);
    add_identity(n, &mut u_inner, b[1]);
    let u = gemm(n, n, n, a, &u_inner);

    let mut t = vec![T::zero(); n * n];
    axpy_into(&mut t, b[12], &a6);
    axpy_into(&mut t, b[10], &a4);
    axpy_into(&mut t, b[8], &a2);
    let mut v = gemm(n, n, n, &a6, &t);
    axpy_into(&mut v, b[6], &a6);
    axpy_into(&mut v, b[4], &a4);
    axpy_into(&mut v, b[2], &a2);
    add_identity(n, &mut v, b[0]);
    (u, v)
}

pub(crate) fn expm_generic<T: Scalar>(n: usize, a: &[T]) -> Result<Vec<T>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let norm = norm_one(n, a);
    if !norm.is_finite() {
        return Err(KrylovError::Overflow { norm });
    }

    let mut squarings = 0;
    let (u, v) = match THETA.iter().find(|(_, theta)| norm <= *theta) {
        Some(&(3, _)) => pade_low(n, a, &B3),
        Some(&(5, _)) => pade_low(n, a, &B5),
        Some(&(7, _)) => pade_low(n, a, &B7),
        Some(_) => pade_low(n, a, &B9),
        None => {
            let s = (norm / THETA_13).log2().ceil().max(0.0) as i32;
            if s > MAX_SQUARINGS {
                return Err(KrylovError::Overflow { norm });
            }
            squarings = s;
            let scale = T::from_real(0.5f64.powi(s));
            let scaled: Vec<T> = a.iter().map(|&x| x * scale).collect();
            pade13(n, &scaled)
        }
    };

    let mut q: Vec<T> = v.iter().zip(&u).map(|(&vi, &ui)| vi - ui).collect();
    let mut r: Vec<T> = v.iter().zip(&u).map(|(&vi, &ui)| vi + ui).collect();
    if !lu_solve(n, n, &mut q, &mut r) {
        return Err(KrylovError::Overflow { norm });
    }
    for _ in 0..squarings {
        r = gemm(n, n, n, &r, &r);
    }
    if r.iter().any(|x| !x.is_finite()) {
        return Err(KrylovError::Overflow { norm });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{E, PI};

    fn real(n: usize, data: &[f64]) -> DenseMatrix {
        DenseMatrix::from_real(n, n, data).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, norm: f64, complex: bool) -> DenseMatrix {
        let m = DenseMatrix::from_fn(n, n, |_, _| {
            let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
            Complex64::new(rng.gen_range(-1.0..1.0), im)
        });
        let s = norm / m.norm_one();
        m.scale(Complex64::new(s, 0.0))
    }

    #[test]
    fn zero_gives_identity() {
        let e = expm_dense(&DenseMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, DenseMatrix::identity(3));
    }

    #[test]
    fn diagonal_case() {
        let e = expm_dense(&real(2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
        assert!((e[(0, 0)].re - E).abs() < 1e-15 * E);
        assert!((e[(1, 1)].re - E * E).abs() < 1e-14 * E * E);
        assert_eq!(e[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn nilpotent_series_terminates() {
        let e = expm_dense(&real(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        let want = real(2, &[1.0, 1.0, 0.0, 1.0]);
        assert!((&e - &want).norm_fro() < 1e-15);
    }

    #[test]
    fn large_norm_diagonal_uses_squaring() {
        let e = expm_dense(&real(2, &[-30.0, 0.0, 0.0, 25.0])).unwrap();
        assert!((e[(0, 0)].re / (-30f64).exp() - 1.0).abs() < 1e-13);
        assert!((e[(1, 1)].re / 25f64.exp() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(
            expm_dense(&DenseMatrix::zeros(2, 3)),
            Err(KrylovError::NotSquare { .. })
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let big = real(2, &[1e6, 0.0, 0.0, 1.0]);
        assert!(matches!(expm_dense(&big), Err(KrylovError::Overflow { .. })));
    }

    #[test]
    fn inverse_product_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let n = 2 + trial % 7;
            let norm = rng.gen_range(0.01..5.0);
            let m = random_matrix(&mut rng, n, norm, trial % 2 == 1);
            let p = &expm_dense(&m).unwrap() * &expm_dense(&m.scale(Complex64::new(-1.0, 0.0))).unwrap();
            assert!((&p - &DenseMatrix::identity(n)).norm_fro() < 1e-10, "trial {trial}");
        }
    }

    #[test]
    fn block_diagonal_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m1 = random_matrix(&mut rng, 3, 2.0, false);
            let m2 = random_matrix(&mut rng, 4, 4.0, true);
            let whole = expm_dense(&m1.block_diag(&m2)).unwrap();
            let parts = expm_dense(&m1).unwrap().block_diag(&expm_dense(&m2).unwrap());
            assert!((&whole - &parts).norm_fro() < 1e-12 * parts.norm_fro());
        }
    }

    #[test]
    fn cos_sin_of_zero_and_pi() {
        let (c, s) = cos_sin_dense(&DenseMatrix::zeros(2, 2)).unwrap();
        assert_eq!(c, DenseMatrix::identity(2));
        assert_eq!(s, DenseMatrix::zeros(2, 2));
        let (c, s) = cos_sin_dense(&real(1, &[PI])).unwrap();
        assert!((c[(0, 0)].re + 1.0).abs() < 1e-14);
        assert!(s[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn pythagorean_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..10 {
            let m = random_matrix(&mut rng, 5, 3.0, trial >= 5);
            let (c, s) = cos_sin_dense(&m).unwrap();
            let id = &(&c * &c) + &(&s * &s);
            assert!((&id - &DenseMatrix::identity(5)).norm_fro() < 1e-10, "trial {trial}");
        }
    }

    #[test]
    fn complex_cos_matches_definition_on_scalar() {
        let z = Complex64::new(0.3, -1.2);
        let (c, s) = cos_sin_dense(&DenseMatrix::from_vec(1, 1, vec![z]).unwrap()).unwrap();
        assert!((c[(0, 0)] - z.cos()).norm() < 1e-14);
        assert!((s[(0, 0)] - z.sin()).norm() < 1e-14);
    }
}
