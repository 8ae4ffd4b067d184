use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Field operations shared by the real and complex dense kernels.
pub(crate) trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `c = a * b` for row-major `a` (n x k) and `b` (k x p).
pub(crate) fn gemm<T: Scalar>(n: usize, k: usize, p: usize, a: &[T], b: &[T]) -> Vec<T> {
    let mut c = vec![T::zero(); n * p];
    for i in 0..n {
        let row = &mut c[i * p..(i + 1) * p];
        for (l, &ail) in a[i * k..(i + 1) * k].iter().enumerate() {
            if ail == T::zero() {
                continue;
            }
            let brow = &b[l * p..(l + 1) * p];
            for (cij, &blj) in row.iter_mut().zip(brow) {
                *cij += ail * blj;
            }
        }
    }
    c
}

/// Solves `a x = b` in place (`b` is n x p, row-major) by LU with partial pivoting.
/// Returns `false` if a zero pivot is met.
pub(crate) fn lu_solve<T: Scalar>(n: usize, p: usize, a: &mut [T], b: &mut [T]) -> bool {
    for col in 0..n {
        let (piv, pmax) = (col..n)
            .map(|r| (r, a[r * n + col].modulus()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == 0.0 || !pmax.is_finite() {
            return false;
        }
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            for j in 0..p {
                b.swap(piv * p + j, col * p + j);
            }
        }
        let d = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / d;
            if factor == T::zero() {
                continue;
            }
            a[r * n + col] = factor;
            for j in col + 1..n {
                let v = a[col * n + j];
                a[r * n + j] -= factor * v;
            }
            for j in 0..p {
                let v = b[col * p + j];
                b[r * p + j] -= factor * v;
            }
        }
    }
    for col in (0..n).rev() {
        let d = a[col * n + col];
        for j in 0..p {
            let mut s = b[col * p + j];
            for l in col + 1..n {
                s -= a[col * n + l] * b[l * p + j];
            }
            b[col * p + j] = s / d;
        }
    }
    true
}

pub(crate) fn norm_one<T: Scalar>(n: usize, a: &[T]) -> f64 {
    (0..n)
        .map(|j| (0..n).map(|i| a[i * n + j].modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}
