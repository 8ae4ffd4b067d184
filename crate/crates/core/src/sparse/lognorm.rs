use super::csr::CsrMatrix;
use crate::dense_funm::{symtrid_eig, SymTridiagonal};
use crate::error::{KrylovError, Result};
use crate::krylov::LanczosProcess;
use crate::vector::{random_unit_vector, DEFAULT_SEED};

/// Iteration cap for the symmetric eigenvalue estimates below.
pub const MAX_LANCZOS_ITERATIONS: usize = 300;

/// Default relative accuracy of [`log_norm_neg`].
pub const DEFAULT_LOG_NORM_TOL: f64 = 1e-8;

/// Logarithmic 2-norm of `-A`, i.e. the largest eigenvalue of `-(A + A^T)/2`.
///
/// Diagonal matrices are handled exactly as `-min(diag)`; otherwise Lanczos
/// runs on the symmetric part until the Ritz residual is below `tol` relative.
pub fn log_norm_neg(a: &CsrMatrix, tol: f64) -> Result<f64> {
    if let Some(d) = a.as_diagonal() {
        return Ok(-d.iter().copied().fold(f64::INFINITY, f64::min));
    }
    let sym = a.linear_combination(-0.5, &a.transpose(), -0.5)?;
    Ok(extreme_eigenvalues(&sym, tol)?.1)
}

/// `(lambda_min, lambda_max)` of a symmetric matrix to relative accuracy `tol`.
pub fn extreme_eigenvalues(a: &CsrMatrix, tol: f64) -> Result<(f64, f64)> {
    if let Some(d) = a.as_diagonal() {
        let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        return Ok((lo, hi));
    }
    let start = random_unit_vector(a.n(), DEFAULT_SEED);
    let mut process = LanczosProcess::new(a, &start, true)?;
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut best = (0.0, 0.0);
    for _ in 0..MAX_LANCZOS_ITERATIONS {
        if !process.step()? {
            break;
        }
        let dec = process.decomposition();
        let t = dec.tridiagonal().expect("Lanczos yields a tridiagonal projection");
        let (lo, hi, res_lo, res_hi) = ritz_extremes(t, dec.h_next)?;
        best = (lo, hi);
        let ok = |theta: f64, res: f64| res <= tol * theta.abs().max(f64::EPSILON * scale);
        if dec.exact || (ok(lo, res_lo) && ok(hi, res_hi)) {
            return Ok(best);
        }
    }
    if process.is_exhausted() {
        return Ok(best);
    }
    Err(KrylovError::Convergence {
        what: "Lanczos extreme eigenvalues",
        iterations: MAX_LANCZOS_ITERATIONS,
        best: best.1,
    })
}

/// Extreme Ritz values and their residual norms `eta |s_m|`.
fn ritz_extremes(t: &SymTridiagonal, eta: f64) -> Result<(f64, f64, f64, f64)> {
    let eig = symtrid_eig(t)?;
    let m = eig.dim();
    let res = |k: usize| eta * eig.q(m - 1, k).abs();
    Ok((eig.values[0], eig.values[m - 1], res(0), res(m - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::build_convection_diffusion;

    #[test]
    fn diagonal_cases() {
        assert_eq!(
            log_norm_neg(&CsrMatrix::from_diagonal(&[0.0, 40.0]), 1e-8).unwrap(),
            0.0
        );
        assert_eq!(
            log_norm_neg(&CsrMatrix::from_diagonal(&[1.0, 2.0]), 1e-8).unwrap(),
            -1.0
        );
    }

    #[test]
    fn symmetric_laplacian_matches_closed_form() {
        // without convection A is symmetric, so the result is -lambda_min(A)
        let n = 5;
        let a = build_convection_diffusion(n, 0.0, 0.0).unwrap();
        let h = 1.0 / (n + 1) as f64;
        let lam_min_a = 3.0 * (2.0 - 2.0 * (std::f64::consts::PI * h).cos()) / (h * h);
        let got = log_norm_neg(&a, 1e-10).unwrap();
        assert!((got + lam_min_a).abs() < 1e-8 * lam_min_a, "{got} vs {}", -lam_min_a);
    }

    #[test]
    fn positive_scaling_is_linear() {
        let a = build_convection_diffusion(4, 50.0, 80.0).unwrap();
        let base = log_norm_neg(&a, 1e-12).unwrap();
        let scaled = log_norm_neg(&a.scaled(2.5), 1e-12).unwrap();
        assert!((scaled - 2.5 * base).abs() < 1e-10 * base.abs());
    }
}
