use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::expm::{cos_sin_dense, expm_dense};
use super::matrix::DenseMatrix;
use super::tridiag::{symtrid_eig, SymTridEig, SymTridiagonal};
use crate::error::{KrylovError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Exp,
    Cos,
    Sin,
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionKind::Exp => "exp",
            FunctionKind::Cos => "cos",
            FunctionKind::Sin => "sin",
        })
    }
}

impl FromStr for FunctionKind {
    type Err = KrylovError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(FunctionKind::Exp),
            "cos" => Ok(FunctionKind::Cos),
            "sin" => Ok(FunctionKind::Sin),
            other => Err(KrylovError::invalid(format!("unknown function '{other}'"))),
        }
    }
}

/// The scalar function `z -> kind(-tau * z)`.
///
/// Every kernel in this crate evaluates this composed function, so divided
/// differences and derivatives are taken with respect to `z`, not `-tau z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixFunctionSpec {
    pub kind: FunctionKind,
    pub tau: f64,
}

impl MatrixFunctionSpec {
    pub fn new(kind: FunctionKind, tau: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(KrylovError::invalid("tau must be finite"));
        }
        Ok(MatrixFunctionSpec { kind, tau })
    }

    pub fn exp(tau: f64) -> Self {
        MatrixFunctionSpec {
            kind: FunctionKind::Exp,
            tau,
        }
    }

    pub fn cos(tau: f64) -> Self {
        MatrixFunctionSpec {
            kind: FunctionKind::Cos,
            tau,
        }
    }

    pub fn sin(tau: f64) -> Self {
        MatrixFunctionSpec {
            kind: FunctionKind::Sin,
            tau,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = z * -self.tau;
        match self.kind {
            FunctionKind::Exp => w.exp(),
            FunctionKind::Cos => w.cos(),
            FunctionKind::Sin => w.sin(),
        }
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        let w = -self.tau * x;
        match self.kind {
            FunctionKind::Exp => w.exp(),
            FunctionKind::Cos => w.cos(),
            FunctionKind::Sin => w.sin(),
        }
    }

    /// `order`-th derivative in `z`.
    pub fn derivative(&self, z: Complex64, order: usize) -> Complex64 {
        let w = z * -self.tau;
        let chain = (-self.tau).powi(order as i32);
        let base = match (self.kind, order % 4) {
            (FunctionKind::Exp, _) => w.exp(),
            (FunctionKind::Cos, 0) => w.cos(),
            (FunctionKind::Cos, 1) => -w.sin(),
            (FunctionKind::Cos, 2) => -w.cos(),
            (FunctionKind::Cos, _) => w.sin(),
            (FunctionKind::Sin, 0) => w.sin(),
            (FunctionKind::Sin, 1) => w.cos(),
            (FunctionKind::Sin, 2) => -w.sin(),
            (FunctionKind::Sin, _) => -w.cos(),
        };
        base * chain
    }

    /// `kind(-tau * M)` for a dense square matrix.
    pub fn apply_dense(&self, m: &DenseMatrix) -> Result<DenseMatrix> {
        let scaled = m.scale(Complex64::new(-self.tau, 0.0));
        match self.kind {
            FunctionKind::Exp => expm_dense(&scaled),
            FunctionKind::Cos => Ok(cos_sin_dense(&scaled)?.0),
            FunctionKind::Sin => Ok(cos_sin_dense(&scaled)?.1),
        }
    }
}

impl fmt::Display for MatrixFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(-{} z)", self.kind, self.tau)
    }
}

/// `Q f(-tau Lambda) Q^T` through the spectral decomposition of `T`.
pub fn funm_hermitian(t: &SymTridiagonal, spec: MatrixFunctionSpec) -> Result<DenseMatrix> {
    let eig = symtrid_eig(t)?;
    let m = eig.dim();
    let fvals: Vec<f64> = eig.values.iter().map(|&l| spec.eval_real(l)).collect();
    let mut out = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let s: f64 = (0..m).map(|k| eig.q(i, k) * fvals[k] * eig.q(j, k)).sum();
            out[(i, j)] = Complex64::new(s, 0.0);
        }
    }
    Ok(out)
}

/// First column `f(-tau T) e_1` from a precomputed decomposition.
pub(crate) fn spectral_first_column(eig: &SymTridEig, spec: MatrixFunctionSpec) -> Vec<f64> {
    let m = eig.dim();
    let weights: Vec<f64> = (0..m).map(|k| spec.eval_real(eig.values[k]) * eig.q(0, k)).collect();
    (0..m).map(|i| (0..m).map(|k| eig.q(i, k) * weights[k]).sum()).collect()
}
