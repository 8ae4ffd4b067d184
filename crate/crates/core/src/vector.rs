//! Small dense vector helpers shared by the iterative code.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 20130401;

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    // scaled accumulation avoids overflow for the large direction vectors of
    // high-order expansion terms
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * x.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}

pub fn norm2_complex(x: &[Complex64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.re.abs()).max(v.im.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    scale * x.iter().map(|v| (v / scale).norm_sqr()).sum::<f64>().sqrt()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn distance(x: &[f64], y: &[f64]) -> f64 {
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    norm2(&diff)
}

/// Uniform entries on `[0, 1)` from a seeded ChaCha8 stream, normalized to unit length.
pub fn random_unit_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let nrm = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nrm);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_vector_is_unit_and_reproducible() {
        let a = random_unit_vector(100, 7);
        assert!((norm2(&a) - 1.0).abs() < 1e-15);
        assert!(a.iter().all(|&x| x >= 0.0));
        assert_eq!(a, random_unit_vector(100, 7));
        assert_ne!(a, random_unit_vector(100, 8));
    }

    #[test]
    fn norms_do_not_overflow() {
        assert!((norm2(&[3e200, 4e200]) / 5e200 - 1.0).abs() < 1e-15);
        assert_eq!(norm2(&[0.0, 0.0]), 0.0);
        assert_eq!(norm2_complex(&[Complex64::new(3.0, 4.0)]), 5.0);
    }
}
