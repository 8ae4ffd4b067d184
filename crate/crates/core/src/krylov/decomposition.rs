use crate::dense_funm::{DenseMatrix, SymTridiagonal};
use crate::sparse::CsrMatrix;
use crate::vector::norm2;

/// Projected matrix of a Krylov decomposition.
#[derive(Clone, Debug, PartialEq)]
pub enum Projected {
    Hessenberg(DenseMatrix),
    Tridiagonal(SymTridiagonal),
}

impl Projected {
    pub fn dim(&self) -> usize {
        match self {
            Projected::Hessenberg(h) => h.rows(),
            Projected::Tridiagonal(t) => t.dim(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Projected::Hessenberg(h) => h.clone(),
            Projected::Tridiagonal(t) => t.to_dense(),
        }
    }

    /// The `(1, 1)` entry, used as the default interpolation node.
    pub fn first_entry(&self) -> f64 {
        match self {
            Projected::Hessenberg(h) => h[(0, 0)].re,
            Projected::Tridiagonal(t) => t.diag()[0],
        }
    }
}

/// `A V = V H + h_next v_next e_m^T` with `V e_1 = v / beta`.
#[derive(Clone, Debug)]
pub struct KrylovDecomposition {
    /// Orthonormal basis vectors `v_1, ..., v_m`.
    pub basis: Vec<Vec<f64>>,
    pub projected: Projected,
    pub h_next: f64,
    /// Unit vector `v_{m+1}`, or all zeros after a breakdown.
    pub v_next: Vec<f64>,
    pub beta: f64,
    /// Set when the process broke down, so the Krylov space is invariant.
    pub exact: bool,
}

impl KrylovDecomposition {
    pub fn m(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.v_next.len()
    }

    pub fn is_tridiagonal(&self) -> bool {
        matches!(self.projected, Projected::Tridiagonal(_))
    }

    pub fn tridiagonal(&self) -> Option<&SymTridiagonal> {
        match &self.projected {
            Projected::Tridiagonal(t) => Some(t),
            Projected::Hessenberg(_) => None,
        }
    }

    /// `V y` for real coefficients `y`.
    pub fn combine(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n()];
        for (v, &c) in self.basis.iter().zip(coeffs) {
            crate::vector::axpy(c, v, &mut out);
        }
        out
    }

    /// `||A V - V H - h_next v_next e_m^T||_F`.
    pub fn residual_norm(&self, a: &CsrMatrix) -> f64 {
        let h = self.projected.to_dense();
        let m = self.m();
        let mut total = 0.0;
        for j in 0..m {
            let mut r = a.matvec(&self.basis[j]).expect("basis length matches A");
            for i in 0..m {
                crate::vector::axpy(-h[(i, j)].re, &self.basis[i], &mut r);
            }
            if j + 1 == m {
                crate::vector::axpy(-self.h_next, &self.v_next, &mut r);
            }
            total += norm2(&r).powi(2);
        }
        total.sqrt()
    }

    /// `||V^T V - I||_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        let m = self.m();
        let mut total = 0.0;
        for i in 0..m {
            for j in 0..m {
                let g = crate::vector::dot(&self.basis[i], &self.basis[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                total += (g - target).powi(2);
            }
        }
        total.sqrt()
    }
}
