use super::decomposition::{KrylovDecomposition, Projected};
use crate::dense_funm::{spectral_first_column, symtrid_eig, MatrixFunctionSpec};
use crate::error::Result;

/// `f(-tau H) e_1` for the projected matrix of `dec`.
pub fn projected_first_column(dec: &KrylovDecomposition, spec: MatrixFunctionSpec) -> Result<Vec<f64>> {
    match &dec.projected {
        Projected::Tridiagonal(t) => Ok(spectral_first_column(&symtrid_eig(t)?, spec)),
        Projected::Hessenberg(h) => Ok(spec.apply_dense(h)?.column(0).iter().map(|z| z.re).collect()),
    }
}

/// `beta V f(-tau H) e_1`.
pub fn krylov_approx(dec: &KrylovDecomposition, spec: MatrixFunctionSpec) -> Result<Vec<f64>> {
    let coeffs: Vec<f64> = projected_first_column(dec, spec)?
        .into_iter()
        .map(|c| dec.beta * c)
        .collect();
    Ok(dec.combine(&coeffs))
}
