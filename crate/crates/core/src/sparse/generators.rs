use super::csr::CsrMatrix;
use crate::error::{KrylovError, Result};

/// A real interval `[a, b]` assumed to contain the spectrum of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralInterval {
    a: f64,
    b: f64,
}

impl SpectralInterval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(KrylovError::invalid(format!("invalid spectral interval [{a}, {b}]")));
        }
        Ok(SpectralInterval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// Widens both ends by `fraction` of the width (or of the magnitude for
    /// a degenerate interval).
    pub fn widened(&self, fraction: f64) -> SpectralInterval {
        let scale = if self.width() > 0.0 {
            self.width()
        } else {
            self.a.abs().max(self.b.abs()).max(f64::MIN_POSITIVE)
        };
        SpectralInterval {
            a: self.a - fraction * scale,
            b: self.b + fraction * scale,
        }
    }
}

/// Diagonal matrix with `n` equispaced eigenvalues covering `interval`.
pub fn build_diag_spectrum(n: usize, interval: SpectralInterval) -> Result<CsrMatrix> {
    if n < 2 {
        return Err(KrylovError::invalid("diagonal spectrum needs at least 2 points"));
    }
    let step = interval.width() / (n - 1) as f64;
    let diag: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                interval.b()
            } else {
                interval.a() + step * i as f64
            }
        })
        .collect();
    Ok(CsrMatrix::from_diagonal(&diag))
}

/// Mesh width `1 / (n + 1)` of the convection-diffusion grid.
pub fn convection_diffusion_h(n: usize) -> f64 {
    1.0 / (n + 1) as f64
}

/// Seven-point convection-diffusion operator on the unit cube with `n`
/// interior points per direction, `N = n^3`.
///
/// Returns `-(1/h^2) [I (x) I (x) C1 + B (x) I (x) I + I (x) C2 (x) I]` where
/// `B = tridiag(1, -2, 1)` and `Cj = tridiag(1 + zeta_j, -2, 1 - zeta_j)` with
/// `zeta_j = delta_j h / 2`. Grid point `(i1, i2, i3)` maps to row
/// `i1 n^2 + i2 n + i3`, so `C1` couples the fastest index and `B` the slowest.
pub fn build_convection_diffusion(n: usize, delta1: f64, delta2: f64) -> Result<CsrMatrix> {
    if n < 2 {
        return Err(KrylovError::invalid("convection-diffusion grid needs n >= 2"));
    }
    if !(delta1.is_finite() && delta2.is_finite()) {
        return Err(KrylovError::invalid("convection coefficients must be finite"));
    }
    let h = convection_diffusion_h(n);
    let scale = -1.0 / (h * h);
    let zeta1 = delta1 * h / 2.0;
    let zeta2 = delta2 * h / 2.0;
    let big = n * n * n;
    let mut triplets = Vec::with_capacity(7 * big);
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                let row = i1 * n * n + i2 * n + i3;
                triplets.push((row, row, scale * -6.0));
                // (offset in index, stride, lower coefficient, upper coefficient)
                for (idx, stride, lower, upper) in [
                    (i3, 1, 1.0 + zeta1, 1.0 - zeta1),
                    (i2, n, 1.0 + zeta2, 1.0 - zeta2),
                    (i1, n * n, 1.0, 1.0),
                ] {
                    if idx > 0 {
                        triplets.push((row, row - stride, scale * lower));
                    }
                    if idx + 1 < n {
                        triplets.push((row, row + stride, scale * upper));
                    }
                }
            }
        }
    }
    CsrMatrix::from_triplets(big, &triplets)
}
