use crate::error::{KrylovError, Result};

// guards against a positive series that never settles (cannot happen for finite input)
const MAX_TERMS: usize = 100_000;

/// `e^X e_1` for a tridiagonal `X` whose off-diagonal entries are nonnegative.
///
/// `diag` has length `n`, `lower[i] = X[i+1][i]` and `upper[i] = X[i][i+1]`.
/// After shifting the diagonal every Taylor term is entrywise nonnegative, so
/// each entry of the result (including entries many orders of magnitude below
/// the largest) is computed to high relative accuracy.
pub(crate) fn expm_metzler_first_column(diag: &[f64], lower: &[f64], upper: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if lower.len() + 1 != n || upper.len() + 1 != n {
        return Err(KrylovError::Dimension {
            expected: n - 1,
            found: lower.len().min(upper.len()),
        });
    }
    if lower.iter().chain(upper).any(|&x| !x.is_finite() || x < 0.0) || diag.iter().any(|x| !x.is_finite()) {
        return Err(KrylovError::invalid(
            "off-diagonal entries must be finite and nonnegative",
        ));
    }
    let shift = diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(-d)).max(0.0);
    let shifted: Vec<f64> = diag.iter().map(|d| d + shift).collect();
    let norm = (0..n)
        .map(|j| shifted[j] + if j > 0 { upper[j - 1] } else { 0.0 } + if j + 1 < n { lower[j] } else { 0.0 })
        .fold(0.0, f64::max);
    let substeps = norm.ceil().max(1.0) as usize;
    let h = 1.0 / substeps as f64;
    let damping = (-shift * h).exp();

    let apply = |y: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let mut s = shifted[i] * y[i];
                if i > 0 {
                    s += lower[i - 1] * y[i - 1];
                }
                if i + 1 < n {
                    s += upper[i] * y[i + 1];
                }
                s * h
            })
            .collect()
    };

    let mut y = vec![0.0; n];
    y[0] = 1.0;
    for _ in 0..substeps {
        let mut sum = y.clone();
        let mut term = y;
        let mut settled = 0;
        for k in 1..=MAX_TERMS {
            term = apply(&term);
            let inv = 1.0 / k as f64;
            term.iter_mut().for_each(|t| *t *= inv);
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
            let small = term.iter().zip(&sum).all(|(t, s)| *t <= f64::EPSILON * 0.5 * s);
            settled = if small { settled + 1 } else { 0 };
            if settled == 2 {
                break;
            }
            if k == MAX_TERMS {
                return Err(KrylovError::Convergence {
                    what: "nonnegative Taylor series",
                    iterations: MAX_TERMS,
                    best: 0.0,
                });
            }
        }
        y = sum.into_iter().map(|s| s * damping).collect();
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(KrylovError::Overflow { norm: norm + shift });
    }
    Ok(y)
}
