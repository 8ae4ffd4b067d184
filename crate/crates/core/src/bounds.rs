//! Computable upper bounds on the error norm of the Arnoldi and Lanczos
//! approximations to `exp(-tau A) v`.
//!
//! The maximum over `t in [0, tau]` appearing in the general-matrix bounds is
//! approximated by uniform sampling, which can only underestimate the true
//! maximum; a refinement pass around the sampled peak keeps the value stable.

use num_complex::Complex64;

use crate::dense_funm::{expm_dense, DenseMatrix, FunctionKind, MatrixFunctionSpec};
use crate::error::{KrylovError, Result};
use crate::estimates::{augment, augmented_first_column};
use crate::krylov::KrylovDecomposition;
use crate::sparse::{CsrMatrix, SpectralInterval};
use crate::vector::norm2;

pub const DEFAULT_T_SAMPLES: usize = 257;

/// Bound values and constants for one decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub bound_41: f64,
    /// Only for symmetric `A` with a tridiagonal projection.
    pub bound_42: Option<f64>,
    pub bound_43: f64,
    /// Only for symmetric `A` with a tridiagonal projection.
    pub bound_44: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: f64,
    pub gamma3: Option<f64>,
    pub mu2: f64,
    pub t_samples: usize,
}

/// `(e^x - 1) / x`, with a four-term series for `|x| < 1e-6`.
pub fn exprel(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0
    } else {
        x.exp_m1() / x
    }
}

/// `e^{tau (b - a)} (e^{-tau lambda_min} - 1) / (-tau lambda_min)`.
pub fn gamma1(interval: SpectralInterval, lambda_min: f64, tau: f64) -> f64 {
    (tau * interval.width()).exp() * exprel(-tau * lambda_min)
}

/// `||(A - z0 I) v_next|| (e^{tau mu2} - 1) / mu2`.
pub fn gamma2(a: &CsrMatrix, dec: &KrylovDecomposition, tau: f64, mu2: f64, z0: f64) -> Result<f64> {
    Ok(shifted_next_norm(a, dec, z0)? * tau * exprel(tau * mu2))
}

/// `tau gamma1 ||(A - z0 I) v_next||`.
pub fn gamma3(a: &CsrMatrix, dec: &KrylovDecomposition, tau: f64, gamma1: f64, z0: f64) -> Result<f64> {
    Ok(tau * gamma1 * shifted_next_norm(a, dec, z0)?)
}

fn shifted_next_norm(a: &CsrMatrix, dec: &KrylovDecomposition, z0: f64) -> Result<f64> {
    let mut w = a.matvec(&dec.v_next)?;
    crate::vector::axpy(-z0, &dec.v_next, &mut w);
    Ok(norm2(&w))
}

fn exp_tau(spec: MatrixFunctionSpec) -> Result<f64> {
    if spec.kind != FunctionKind::Exp {
        return Err(KrylovError::invalid("bounds are exponential-only"));
    }
    if spec.tau.is_nan() || spec.tau < 0.0 {
        return Err(KrylovError::invalid("bounds need tau >= 0"));
    }
    Ok(spec.tau)
}

/// A moment evaluated on a sampled column of `e^{-t M} e_1` at time `t`.
type Moment<'a> = &'a dyn Fn(&[Complex64], f64) -> f64;

/// Sampled maxima over `t in [0, tau]` of `|e_m^T e^{-tH} e_1|` and of
/// `|e_m^T phi_1(-tH) e_1|` (`phi_1(w) = (e^w - e^{-t z0}) / (w + t z0)`).
///
/// Both come from `e^{-t M} e_1` with `M = [[H, 0], [e_m^T, z0]]`, whose
/// last entry is `-t e_m^T phi_1(-tH) e_1`. A uniform pass of `n_t` samples
/// is followed, for each moment, by a second uniform pass of `n_t` samples
/// over the two cells around its sampled maximum, so that sharp peaks close
/// to `t = 0` are resolved.
pub fn sampled_moment_maxima(dec: &KrylovDecomposition, tau: f64, z0: f64, n_t: usize) -> Result<(f64, f64)> {
    if n_t < 2 {
        return Err(KrylovError::invalid("at least two t samples are required"));
    }
    let h = dec.projected.to_dense();
    let m = dec.m();
    let aug = augment(&h, &crate::dense_funm::NodeSequence::from_real(&[z0])?)?.assembled;
    let exp_moment = |y: &[Complex64], _t: f64| y[m - 1].norm();
    let phi_moment = |y: &[Complex64], t: f64| {
        // at t = 0 the moment is e_m^T phi_1(0) e_1 = e_m^T e_1
        if t == 0.0 {
            if m == 1 {
                1.0
            } else {
                0.0
            }
        } else {
            y[m].norm() / t
        }
    };
    let mut start = vec![Complex64::new(0.0, 0.0); m + 1];
    start[0] = Complex64::new(1.0, 0.0);
    let dt = tau / (n_t - 1) as f64;
    let coarse = sample_uniform(&aug, &start, dt, n_t)?;

    let mut maxima = [0.0; 2];
    let moments: [Moment; 2] = [&exp_moment, &phi_moment];
    for (best, moment) in maxima.iter_mut().zip(moments) {
        let values: Vec<f64> = coarse
            .iter()
            .enumerate()
            .map(|(i, y)| moment(y, dt * i as f64))
            .collect();
        let peak = (0..n_t).fold(0, |b, i| if values[i] > values[b] { i } else { b });
        *best = values[peak];
        let lo = peak.saturating_sub(1);
        let hi = (peak + 1).min(n_t - 1);
        let fine_dt = dt * (hi - lo) as f64 / (n_t - 1) as f64;
        for (i, y) in sample_uniform(&aug, &coarse[lo], fine_dt, n_t)?.iter().enumerate() {
            *best = best.max(moment(y, dt * lo as f64 + fine_dt * i as f64));
        }
    }
    Ok((maxima[0], maxima[1]))
}

/// `e^{-(t0 + i dt) M} e_1` for `i = 0..count`, given `start = e^{-t0 M} e_1`,
/// advanced by one fixed step matrix.
fn sample_uniform(aug: &DenseMatrix, start: &[Complex64], dt: f64, count: usize) -> Result<Vec<Vec<Complex64>>> {
    let step = expm_dense(&aug.scale(Complex64::new(-dt, 0.0)))?;
    let mut samples = Vec::with_capacity(count);
    samples.push(start.to_vec());
    for i in 1..count {
        let next = step.mul_vec(&samples[i - 1])?;
        samples.push(next);
    }
    Ok(samples)
}

/// `tau beta h_next max_t |e_m^T e^{-tH} e_1| (e^{tau mu2} - 1) / (tau mu2)`.
pub fn bound_thm41(dec: &KrylovDecomposition, spec: MatrixFunctionSpec, mu2: f64, n_t: usize) -> Result<f64> {
    let tau = exp_tau(spec)?;
    if dec.h_next == 0.0 || tau == 0.0 {
        return Ok(0.0);
    }
    let (max_exp, _) = sampled_moment_maxima(dec, tau, dec.projected.first_entry(), n_t)?;
    Ok(tau * dec.beta * dec.h_next * max_exp * exprel(tau * mu2))
}

/// `gamma1 tau beta eta_next |e_m^T e^{-tau T} e_1|` for a Lanczos decomposition.
pub fn bound_thm42(
    dec: &KrylovDecomposition,
    spec: MatrixFunctionSpec,
    interval: SpectralInterval,
    lambda_min: f64,
) -> Result<f64> {
    let tau = exp_tau(spec)?;
    let t = dec
        .tridiagonal()
        .ok_or_else(|| KrylovError::invalid("this bound needs a Lanczos decomposition"))?;
    if dec.h_next == 0.0 || tau == 0.0 {
        return Ok(0.0);
    }
    let f = crate::dense_funm::funm_hermitian(t, spec)?;
    let moment = f[(dec.m() - 1, 0)].re.abs();
    Ok(gamma1(interval, lambda_min, tau) * tau * dec.beta * dec.h_next * moment)
}

/// `((1 + gamma2) tau beta h_next max_t |e_m^T phi_1(-tH) e_1|, gamma2)`.
pub fn bound_thm43(
    a: &CsrMatrix,
    dec: &KrylovDecomposition,
    spec: MatrixFunctionSpec,
    mu2: f64,
    z0: f64,
    n_t: usize,
) -> Result<(f64, f64)> {
    let tau = exp_tau(spec)?;
    let g2 = gamma2(a, dec, tau, mu2, z0)?;
    if dec.h_next == 0.0 || tau == 0.0 {
        return Ok((0.0, g2));
    }
    let (_, max_phi) = sampled_moment_maxima(dec, tau, z0, n_t)?;
    Ok(((1.0 + g2) * tau * dec.beta * dec.h_next * max_phi, g2))
}

/// `(1 + gamma3) tau beta eta_next |e_m^T phi_1(-tau T) e_1|` for a Lanczos decomposition.
pub fn bound_thm44(
    a: &CsrMatrix,
    dec: &KrylovDecomposition,
    spec: MatrixFunctionSpec,
    interval: SpectralInterval,
    lambda_min: f64,
    z0: f64,
) -> Result<f64> {
    let tau = exp_tau(spec)?;
    if !dec.is_tridiagonal() {
        return Err(KrylovError::invalid("this bound needs a Lanczos decomposition"));
    }
    if dec.h_next == 0.0 || tau == 0.0 {
        return Ok(0.0);
    }
    let g3 = gamma3(a, dec, tau, gamma1(interval, lambda_min, tau), z0)?;
    // the last entry of e^{-tau M} e_1 already carries the factor tau
    let c = augmented_first_column(&dec.projected.to_dense(), Complex64::new(z0, 0.0), spec)?;
    Ok((1.0 + g3) * dec.beta * dec.h_next * c[dec.m()].norm())
}

/// Spectral data needed by the symmetric-only bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianSpectrum {
    pub interval: SpectralInterval,
    pub lambda_min: f64,
}

/// All applicable bounds for `dec`, with `z0 = h_11`.
///
/// The symmetric-only fields are filled when `spectrum` is given and the
/// decomposition is tridiagonal.
pub fn bound_report(
    a: &CsrMatrix,
    dec: &KrylovDecomposition,
    spec: MatrixFunctionSpec,
    mu2: f64,
    spectrum: Option<HermitianSpectrum>,
    n_t: usize,
) -> Result<BoundReport> {
    let z0 = dec.projected.first_entry();
    let bound_41 = bound_thm41(dec, spec, mu2, n_t)?;
    let (bound_43, gamma2) = bound_thm43(a, dec, spec, mu2, z0, n_t)?;
    let mut report = BoundReport {
        bound_41,
        bound_42: None,
        bound_43,
        bound_44: None,
        gamma1: None,
        gamma2,
        gamma3: None,
        mu2,
        t_samples: n_t,
    };
    if let (Some(s), true) = (spectrum, dec.is_tridiagonal()) {
        let g1 = gamma1(s.interval, s.lambda_min, spec.tau);
        report.gamma1 = Some(g1);
        report.gamma3 = Some(gamma3(a, dec, spec.tau, g1, z0)?);
        report.bound_42 = Some(bound_thm42(dec, spec, s.interval, s.lambda_min)?);
        report.bound_44 = Some(bound_thm44(a, dec, spec, s.interval, s.lambda_min, z0)?);
    }
    Ok(report)
}

/// Spectral interval of a symmetric matrix: exact for diagonal matrices,
/// otherwise extreme Lanczos Ritz values widened by 1% of the width on each side.
/// `lambda_min` is the lower end of the returned interval.
pub fn estimate_spectrum(a: &CsrMatrix) -> Result<HermitianSpectrum> {
    let (lo, hi) = crate::sparse::extreme_eigenvalues(a, crate::sparse::DEFAULT_LOG_NORM_TOL)?;
    let mut interval = SpectralInterval::new(lo, hi)?;
    if a.as_diagonal().is_none() {
        interval = interval.widened(0.01);
    }
    Ok(HermitianSpectrum {
        interval,
        lambda_min: interval.a(),
    })
}
