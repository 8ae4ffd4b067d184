use num_complex::Complex64;

use super::matrix::DenseMatrix;
use crate::error::{KrylovError, Result};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// Eigenvalues of an upper Hessenberg matrix by complex shifted QR with
/// Wilkinson shifts and deflation. Entries below the subdiagonal are ignored.
pub fn hessenberg_eigenvalues(h: &DenseMatrix) -> Result<Vec<Complex64>> {
    let n = h.ensure_square()?;
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            if i > j + 1 {
                Complex64::new(0.0, 0.0)
            } else {
                h[(i, j)]
            }
        })
        .collect();
    let idx = |i: usize, j: usize| i * n + j;
    let mut values = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0;
    while hi > 0 {
        if hi == 1 {
            values.push(a[idx(0, 0)]);
            break;
        }
        // find the start of the unreduced trailing block
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = a[idx(lo, lo - 1)].norm();
            let scale = a[idx(lo, lo)].norm() + a[idx(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * scale.max(f64::MIN_POSITIVE) {
                a[idx(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            values.push(a[idx(hi - 1, hi - 1)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(KrylovError::Convergence {
                what: "Hessenberg QR",
                iterations: MAX_ITER_PER_EIGENVALUE,
                best: a[idx(hi - 1, hi - 2)].norm(),
            });
        }

        let (p, q) = (hi - 2, hi - 1);
        let (x, y, z, w) = (a[idx(p, p)], a[idx(p, q)], a[idx(q, p)], a[idx(q, q)]);
        let tr = x + w;
        let det = x * w - y * z;
        let disc = (tr * tr * 0.25 - det).sqrt();
        let (l1, l2) = (tr * 0.5 + disc, tr * 0.5 - disc);
        let mut shift = if (l1 - w).norm() < (l2 - w).norm() { l1 } else { l2 };
        if iter % 11 == 10 {
            // exceptional shift
            shift += Complex64::new(a[idx(q, p)].norm(), 0.0);
        }

        // one QR step on the active block [lo, hi) via Givens rotations
        for k in lo..hi {
            a[idx(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo - 1);
        for k in lo..hi - 1 {
            let (f, g) = (a[idx(k, k)], a[idx(k + 1, k)]);
            let r = (f.norm_sqr() + g.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (f / r, g / r)
            };
            for j in k..n {
                let (u, v) = (a[idx(k, j)], a[idx(k + 1, j)]);
                a[idx(k, j)] = c.conj() * u + s.conj() * v;
                a[idx(k + 1, j)] = -s * u + c * v;
            }
            rotations.push((c, s));
        }
        for (off, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + off;
            for i in 0..=(k + 1).min(hi - 1) {
                let (u, v) = (a[idx(i, k)], a[idx(i, k + 1)]);
                a[idx(i, k)] = u * c + v * s;
                a[idx(i, k + 1)] = -u * s.conj() + v * c.conj();
            }
        }
        for k in lo..hi {
            a[idx(k, k)] += shift;
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn triangular_matrix_returns_diagonal() {
        let h = DenseMatrix::from_real(3, 3, &[1.0, 2.0, 3.0, 0.0, 4.0, 5.0, 0.0, 0.0, 6.0]).unwrap();
        let ev = sorted(hessenberg_eigenvalues(&h).unwrap());
        for (g, w) in ev.iter().zip([1.0, 4.0, 6.0]) {
            assert!((g - w).norm() < 1e-13);
        }
    }

    #[test]
    fn rotation_has_complex_pair() {
        let h = DenseMatrix::from_real(2, 2, &[0.0, -2.0, 2.0, 0.0]).unwrap();
        let ev = sorted(hessenberg_eigenvalues(&h).unwrap());
        assert!((ev[0] - Complex64::new(0.0, -2.0)).norm() < 1e-13);
        assert!((ev[1] - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let h = DenseMatrix::from_real(3, 3, &[6.0, -11.0, 6.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        let ev = sorted(hessenberg_eigenvalues(&h).unwrap());
        for (g, w) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((g - w).norm() < 1e-10, "{g}");
        }
    }

    #[test]
    fn trace_is_preserved_on_random_hessenberg() {
        let n = 12;
        let h = DenseMatrix::from_fn(n, n, |i, j| {
            if i > j + 1 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(((i * 7 + j * 3) % 11) as f64 - 5.0, 0.0)
            }
        });
        let ev = hessenberg_eigenvalues(&h).unwrap();
        let trace: Complex64 = (0..n).map(|i| h[(i, i)]).sum();
        let sum: Complex64 = ev.iter().sum();
        assert!((trace - sum).norm() < 1e-9);
        assert_eq!(ev.len(), n);
    }
}
