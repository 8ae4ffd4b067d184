use num_complex::Complex64;

use crate::dense_funm::DenseMatrix;
use crate::error::{KrylovError, Result};

/// Real square matrix in compressed sparse row form.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Validates the CSR invariants: monotone row pointers, in-range and
    /// strictly increasing column indices within each row, finite values.
    pub fn try_new(n: usize, row_ptr: Vec<usize>, col_idx: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if row_ptr.len() != n + 1 {
            return Err(KrylovError::Dimension {
                expected: n + 1,
                found: row_ptr.len(),
            });
        }
        if row_ptr[0] != 0 || row_ptr[n] != col_idx.len() || col_idx.len() != values.len() {
            return Err(KrylovError::invalid("inconsistent CSR array lengths"));
        }
        for i in 0..n {
            let (s, e) = (row_ptr[i], row_ptr[i + 1]);
            if s > e {
                return Err(KrylovError::invalid(format!("row pointer decreases at row {i}")));
            }
            let cols = &col_idx[s..e];
            if cols.iter().any(|&c| c >= n) {
                return Err(KrylovError::invalid(format!("column index out of range in row {i}")));
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(KrylovError::invalid(format!(
                    "columns not strictly increasing in row {i}"
                )));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(KrylovError::invalid("non-finite matrix entry"));
        }
        Ok(CsrMatrix {
            n,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Assembles from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut sorted: Vec<(usize, usize, f64)> = triplets.to_vec();
        if let Some(&(r, c, _)) = sorted.iter().find(|&&(r, c, _)| r >= n || c >= n) {
            return Err(KrylovError::invalid(format!(
                "entry ({r}, {c}) outside a {n}x{n} matrix"
            )));
        }
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; n + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in sorted {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            col_idx.push(c);
            values.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self::try_new(n, row_ptr, col_idx, values)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        CsrMatrix {
            n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: diag.to_vec(),
        }
    }

    /// Row-major dense `n x n` data.
    pub fn from_dense(n: usize, dense: &[f64]) -> Result<Self> {
        if dense.len() != n * n {
            return Err(KrylovError::Dimension {
                expected: n * n,
                found: dense.len(),
            });
        }
        let triplets: Vec<_> = (0..n * n)
            .filter(|&k| dense[k] != 0.0)
            .map(|k| (k / n, k % n, dense[k]))
            .collect();
        Self::from_triplets(n, &triplets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterates `(row, col, value)` over stored entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (i, self.col_idx[k], self.values[k]))
        })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (s, e) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col_idx[s..e].binary_search(&j) {
            Ok(k) => self.values[s + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y)?;
        Ok(y)
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.n || y.len() != self.n {
            return Err(KrylovError::Dimension {
                expected: self.n,
                found: if x.len() != self.n { x.len() } else { y.len() },
            });
        }
        for (i, yi) in y.iter_mut().enumerate() {
            let (s, e) = (self.row_ptr[i], self.row_ptr[i + 1]);
            *yi = self.col_idx[s..e]
                .iter()
                .zip(&self.values[s..e])
                .map(|(&j, &a)| a * x[j])
                .sum();
        }
        Ok(())
    }

    /// `A x` for complex `x`.
    pub fn matvec_complex(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(KrylovError::Dimension {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                (self.row_ptr[i]..self.row_ptr[i + 1])
                    .map(|k| x[self.col_idx[k]] * self.values[k])
                    .sum()
            })
            .collect())
    }

    pub fn transpose(&self) -> CsrMatrix {
        let triplets: Vec<_> = self.iter().map(|(i, j, v)| (j, i, v)).collect();
        Self::from_triplets(self.n, &triplets).expect("transpose of a valid matrix is valid")
    }

    /// `alpha * self + beta * other`.
    pub fn linear_combination(&self, alpha: f64, other: &CsrMatrix, beta: f64) -> Result<CsrMatrix> {
        if other.n != self.n {
            return Err(KrylovError::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        let triplets: Vec<_> = self
            .iter()
            .map(|(i, j, v)| (i, j, alpha * v))
            .chain(other.iter().map(|(i, j, v)| (i, j, beta * v)))
            .collect();
        Self::from_triplets(self.n, &triplets)
    }

    pub fn scaled(&self, alpha: f64) -> CsrMatrix {
        CsrMatrix {
            values: self.values.iter().map(|v| alpha * v).collect(),
            ..self.clone()
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Exact symmetry: every stored entry equals its mirror.
    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(i, j, v)| self.get(j, i) == v)
    }

    /// Diagonal entries if the matrix has no off-diagonal entries.
    pub fn as_diagonal(&self) -> Option<Vec<f64>> {
        if self.iter().any(|(i, j, v)| i != j && v != 0.0) {
            return None;
        }
        Some((0..self.n).map(|i| self.get(i, i)).collect())
    }

    pub fn to_dense_real(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n * self.n];
        for (i, j, v) in self.iter() {
            d[i * self.n + j] = v;
        }
        d
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_real(self.n, self.n, &self.to_dense_real()).expect("square")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sparse(rng: &mut ChaCha8Rng, n: usize, density: f64) -> CsrMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(density) {
                    t.push((i, j, rng.gen_range(-1.0..1.0)));
                }
            }
        }
        CsrMatrix::from_triplets(n, &t).unwrap()
    }

    #[test]
    fn identity_and_diagonal_products() {
        let x = vec![1.0, -2.0, 3.5];
        assert_eq!(CsrMatrix::identity(3).matvec(&x).unwrap(), x);
        let d = CsrMatrix::from_diagonal(&[2.0, 0.5, -1.0]);
        assert_eq!(d.matvec(&x).unwrap(), vec![2.0, -1.0, -3.5]);
    }

    #[test]
    fn matches_dense_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = random_sparse(&mut rng, 50, 0.05);
        let x: Vec<f64> = (0..50).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let dense = a.to_dense_real();
        let y = a.matvec(&x).unwrap();
        for i in 0..50 {
            let want: f64 = (0..50).map(|j| dense[i * 50 + j] * x[j]).sum();
            assert!((y[i] - want).abs() <= 1e-13 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(CsrMatrix::identity(3).matvec(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn invariants_checked() {
        assert!(CsrMatrix::try_new(2, vec![0, 1, 2], vec![0, 2], vec![1.0, 1.0]).is_err());
        assert!(CsrMatrix::try_new(2, vec![0, 2, 2], vec![1, 0], vec![1.0, 1.0]).is_err());
        assert!(CsrMatrix::try_new(2, vec![0, 1, 2], vec![0, 1], vec![f64::NAN, 1.0]).is_err());
        assert!(CsrMatrix::try_new(2, vec![0, 1, 2], vec![0, 1], vec![1.0, 1.0]).is_ok());
    }

    #[test]
    fn duplicates_are_summed() {
        let a = CsrMatrix::from_triplets(2, &[(0, 1, 1.0), (0, 1, 2.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(a.get(0, 1), 3.0);
        assert_eq!(a.nnz(), 2);
        assert!(!a.is_symmetric());
        assert_eq!(a.transpose().get(1, 0), 3.0);
    }

    proptest! {
        #[test]
        fn matvec_is_linear(seed in 0u64..1000, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_sparse(&mut rng, 20, 0.2);
            let x: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let comb: Vec<f64> = x.iter().zip(&y).map(|(a, b)| alpha * a + beta * b).collect();
            let lhs = a.matvec(&comb).unwrap();
            let ax = a.matvec(&x).unwrap();
            let ay = a.matvec(&y).unwrap();
            for i in 0..20 {
                let rhs = alpha * ax[i] + beta * ay[i];
                prop_assert!((lhs[i] - rhs).abs() <= 1e-13 * (1.0 + rhs.abs()));
            }
        }
    }
}
