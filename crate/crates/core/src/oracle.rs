//! Dense reference values of `f(-tau A) v` for checking approximations.

use std::fmt;

use crate::dense_funm::{DenseMatrix, MatrixFunctionSpec};
use crate::error::{KrylovError, Result};
use crate::sparse::CsrMatrix;
use crate::vector::norm2;

/// Largest non-diagonal dimension evaluated densely.
pub const DENSE_CAP: usize = 3000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMethod {
    DiagonalExact,
    DenseKernel,
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMethod::DiagonalExact => "diagonal-exact",
            OracleMethod::DenseKernel => "dense-kernel",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub exact: Vec<f64>,
    pub method: OracleMethod,
    /// Dimension of the dense evaluation (0 for the diagonal path).
    pub dense_dim: usize,
}

/// `f(-tau A) v`, elementwise for diagonal `A` and through the dense
/// kernels otherwise.
pub fn reference_fav(a: &CsrMatrix, v: &[f64], spec: MatrixFunctionSpec) -> Result<OracleResult> {
    if v.len() != a.n() {
        return Err(KrylovError::Dimension {
            expected: a.n(),
            found: v.len(),
        });
    }
    if let Some(d) = a.as_diagonal() {
        return Ok(OracleResult {
            exact: d.iter().zip(v).map(|(&x, &vi)| spec.eval_real(x) * vi).collect(),
            method: OracleMethod::DiagonalExact,
            dense_dim: 0,
        });
    }
    if a.n() > DENSE_CAP {
        return Err(KrylovError::SizeCap {
            n: a.n(),
            cap: DENSE_CAP,
        });
    }
    let f = spec.apply_dense(&a.to_dense())?;
    let vm = DenseMatrix::from_real(a.n(), 1, v)?;
    let exact = f.matmul(&vm)?.real_parts();
    Ok(OracleResult {
        exact,
        method: OracleMethod::DenseKernel,
        dense_dim: a.n(),
    })
}

/// `(||exact - approx||, ||exact - approx|| / ||exact||)`; the relative value
/// equals the absolute one when `exact` is zero.
pub fn true_error(approx: &[f64], oracle: &OracleResult) -> Result<(f64, f64)> {
    if approx.len() != oracle.exact.len() {
        return Err(KrylovError::Dimension {
            expected: oracle.exact.len(),
            found: approx.len(),
        });
    }
    let abs = crate::vector::distance(&oracle.exact, approx);
    let scale = norm2(&oracle.exact);
    Ok((abs, if scale > 0.0 { abs / scale } else { abs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_oracle(v: &[f64]) -> OracleResult {
        OracleResult {
            exact: v.to_vec(),
            method: OracleMethod::DiagonalExact,
            dense_dim: 0,
        }
    }

    #[test]
    fn error_arithmetic() {
        let o = diag_oracle(&[1.0, 0.0, 0.0]);
        assert_eq!(true_error(&[1.0, 0.0, 0.0], &o).unwrap(), (0.0, 0.0));
        assert_eq!(true_error(&[0.0, 0.0, 0.0], &o).unwrap(), (1.0, 1.0));
        let o = diag_oracle(&[3.0, 4.0, 0.0]);
        let (abs, rel) = true_error(&[0.0, 4.0, 0.0], &o).unwrap();
        assert_eq!(abs, 3.0);
        assert!((rel - 0.6).abs() < 1e-16);
        assert!(true_error(&[1.0], &o).is_err());
    }

    #[test]
    fn zero_tau_returns_v() {
        let a = crate::sparse::build_convection_diffusion(2, 3.0, 1.0).unwrap();
        let v: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let r = reference_fav(&a, &v, MatrixFunctionSpec::exp(0.0)).unwrap();
        assert_eq!(r.method, OracleMethod::DenseKernel);
        for (x, y) in r.exact.iter().zip(&v) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn size_cap_enforced() {
        let a = crate::sparse::build_convection_diffusion(15, 1.0, 1.0).unwrap();
        let err = reference_fav(&a, &vec![1.0; a.n()], MatrixFunctionSpec::exp(1.0)).unwrap_err();
        assert!(matches!(err, KrylovError::SizeCap { .. }));
    }
}
