use num_complex::Complex64;

use super::augment::augmented_first_column;
use crate::dense_funm::MatrixFunctionSpec;
use crate::error::{KrylovError, Result};
use crate::krylov::{KrylovDecomposition, RestartedArnoldi};
use crate::vector::norm2;

/// Absolute and relative a posteriori error estimates for one approximation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatePair {
    pub xi1: f64,
    pub xi2: f64,
    pub xi1_rel: f64,
    pub xi2_rel: f64,
    /// Norm of the current approximation, the denominator of the relative estimates.
    pub approx_norm: f64,
}

impl EstimatePair {
    /// Relative values divide by `approx_norm` when it is positive and equal
    /// the absolute values otherwise.
    pub fn from_parts(xi1: f64, xi2: f64, approx_norm: f64) -> Self {
        let rel = |x: f64| if approx_norm > 0.0 { x / approx_norm } else { x };
        EstimatePair {
            xi1,
            xi2,
            xi1_rel: rel(xi1),
            xi2_rel: rel(xi2),
            approx_norm,
        }
    }
}

/// The Krylov approximation together with its error estimates.
///
/// With `c = f(-tau Hbar) e_1`, `Hbar = [[H, 0], [e_m^T, h_11]]`, the
/// approximation is `beta V c[..m]`, `xi1 = beta h_next |c[m-1]|` and
/// `xi2 = beta h_next |c[m]|`.
pub fn xi_estimates(dec: &KrylovDecomposition, spec: MatrixFunctionSpec) -> Result<(Vec<f64>, EstimatePair)> {
    let h = dec.projected.to_dense();
    let m = dec.m();
    let c = augmented_first_column(&h, h[(0, 0)], spec)?;
    let coeffs: Vec<f64> = c[..m].iter().map(|z| dec.beta * z.re).collect();
    let approx = dec.combine(&coeffs);
    let est = estimates_from_column(&c, dec.beta, dec.h_next, norm2(&approx));
    Ok((approx, est))
}

/// Estimates for a restarted run, using the accumulated Hessenberg matrix
/// and the last cycle's `h_{m+1,m}`.
pub fn xi_estimates_restarted(state: &RestartedArnoldi<'_>, spec: MatrixFunctionSpec) -> Result<EstimatePair> {
    let h = state.accumulated_hessenberg();
    if h.rows() == 0 {
        return Err(KrylovError::invalid("no restart cycle has been completed"));
    }
    let c = augmented_first_column(h, h[(0, 0)], spec)?;
    Ok(estimates_from_column(
        &c,
        state.beta(),
        state.last_h_next(),
        norm2(state.approximation()),
    ))
}

fn estimates_from_column(c: &[Complex64], beta: f64, h_next: f64, approx_norm: f64) -> EstimatePair {
    let m = c.len() - 1;
    EstimatePair::from_parts(
        beta * h_next * c[m - 1].norm(),
        beta * h_next * c[m].norm(),
        approx_norm,
    )
}
