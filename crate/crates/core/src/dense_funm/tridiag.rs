use num_complex::Complex64;

use super::matrix::DenseMatrix;
use crate::error::{KrylovError, Result};

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(KrylovError::invalid("tridiagonal matrix must be nonempty"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(KrylovError::Dimension {
                expected: diag.len() - 1,
                found: offdiag.len(),
            });
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(KrylovError::invalid("tridiagonal entries must be finite"));
        }
        Ok(SymTridiagonal { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> SymTridiagonal {
        SymTridiagonal {
            diag: self.diag[..k].to_vec(),
            offdiag: self.offdiag[..k - 1].to_vec(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| {
            let x = if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            };
            Complex64::new(x, 0.0)
        })
    }
}

/// Eigen-decomposition `T = Q diag(values) Q^T` with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct SymTridEig {
    pub values: Vec<f64>,
    /// Row-major `m x m`; column `i` is the eigenvector for `values[i]`.
    pub vectors: Vec<f64>,
}

impl SymTridEig {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn q(&self, row: usize, col: usize) -> f64 {
        self.vectors[row * self.dim() + col]
    }

    pub fn vectors_dense(&self) -> DenseMatrix {
        let m = self.dim();
        DenseMatrix::from_real(m, m, &self.vectors).expect("square eigenvector matrix")
    }
}

const MAX_SWEEPS: usize = 50;

/// Implicit QL iteration with Wilkinson-type shifts.
pub fn symtrid_eig(t: &SymTridiagonal) -> Result<SymTridEig> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(KrylovError::Convergence {
                    what: "symmetric tridiagonal QL",
                    iterations: MAX_SWEEPS,
                    best: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[mm] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = mm;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zf = z[k * n + i + 1];
                    let zi = z[k * n + i];
                    z[k * n + i + 1] = s * zi + c * zf;
                    z[k * n + i] = c * zi - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = z[row * n + old_col];
        }
    }
    Ok(SymTridEig { values, vectors })
}
