use num_complex::Complex64;

use crate::dense_funm::{expm_metzler_first_column, DenseMatrix, FunctionKind, MatrixFunctionSpec, NodeSequence};
use crate::error::{KrylovError, Result};

/// `H` bordered by one row and column per node:
/// `M_0 = H`, `M_j = [[M_{j-1}, 0], [e_last^T, z_{j-1}]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AugmentedMatrix {
    pub base: DenseMatrix,
    pub nodes: NodeSequence,
    pub assembled: DenseMatrix,
}

impl AugmentedMatrix {
    pub fn dim(&self) -> usize {
        self.assembled.rows()
    }
}

pub fn augment(h: &DenseMatrix, nodes: &NodeSequence) -> Result<AugmentedMatrix> {
    let m = h.ensure_square()?;
    if m == 0 {
        return Err(KrylovError::invalid("cannot augment an empty matrix"));
    }
    let k = nodes.len();
    let mut assembled = DenseMatrix::zeros(m + k, m + k);
    for i in 0..m {
        for j in 0..m {
            assembled[(i, j)] = h[(i, j)];
        }
    }
    for (j, &z) in nodes.as_slice().iter().enumerate() {
        let row = m + j;
        assembled[(row, row - 1)] = Complex64::new(1.0, 0.0);
        assembled[(row, row)] = z;
    }
    Ok(AugmentedMatrix {
        base: h.clone(),
        nodes: nodes.clone(),
        assembled,
    })
}

/// `f(-tau M) e_1` for `M = augment(h, (z0))`; length `m + 1`.
///
/// The leading `m` entries are `f(-tau H) e_1`, the last one is
/// `e_m^T phi_1(H) e_1` for `phi_1(z) = (f(z) - f(z0)) / (z - z0)`.
pub fn augmented_first_column(h: &DenseMatrix, z0: Complex64, spec: MatrixFunctionSpec) -> Result<Vec<Complex64>> {
    let nodes = NodeSequence::new(vec![z0])?;
    let aug = augment(h, &nodes)?;
    apply_first_column(&aug.assembled, spec)
}

/// `e_m^T phi_j(H) e_1` for `j = 1..=k`, where `phi_j(z) = f[z, z_0, ..., z_{j-1}]`.
///
/// All moments come from one evaluation of `f` on the fully augmented
/// matrix, since the leading blocks of the chain are nested.
pub fn phi_moments(h: &DenseMatrix, nodes: &NodeSequence, spec: MatrixFunctionSpec) -> Result<Vec<Complex64>> {
    let aug = augment(h, nodes)?;
    let m = h.rows();
    let col = apply_first_column(&aug.assembled, spec)?;
    Ok(col[m..].to_vec())
}

/// `e_m^T phi_k(H) e_1` with `k = nodes.len()`.
pub fn phi_moment(h: &DenseMatrix, nodes: &NodeSequence, spec: MatrixFunctionSpec) -> Result<Complex64> {
    Ok(*phi_moments(h, nodes, spec)?.last().expect("nodes are nonempty"))
}

/// First column of `f(-tau M)`.
///
/// When `M` is real tridiagonal with nonnegative off-diagonal entries and
/// `f` is the exponential with `tau >= 0`, a sign similarity turns `-tau M`
/// into a matrix with nonnegative off-diagonal part whose exponential is
/// computed entrywise to high relative accuracy. This keeps the tiny
/// high-order divided differences in the last rows accurate.
fn apply_first_column(m: &DenseMatrix, spec: MatrixFunctionSpec) -> Result<Vec<Complex64>> {
    if let Some(col) = metzler_first_column(m, spec)? {
        return Ok(col);
    }
    Ok(spec.apply_dense(m)?.column(0))
}

fn metzler_first_column(m: &DenseMatrix, spec: MatrixFunctionSpec) -> Result<Option<Vec<Complex64>>> {
    if spec.kind != FunctionKind::Exp || spec.tau < 0.0 || !m.is_real() {
        return Ok(None);
    }
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)].re;
            if v != 0.0 && (i.abs_diff(j) > 1 || (i != j && v < 0.0)) {
                return Ok(None);
            }
        }
    }
    // D M D with D = diag((-1)^i) flips the sign of the off-diagonals, so
    // -tau D M D has nonnegative off-diagonal entries
    let diag: Vec<f64> = (0..n).map(|i| -spec.tau * m[(i, i)].re).collect();
    let lower: Vec<f64> = (1..n).map(|i| spec.tau * m[(i, i - 1)].re).collect();
    let upper: Vec<f64> = (1..n).map(|i| spec.tau * m[(i - 1, i)].re).collect();
    let col = expm_metzler_first_column(&diag, &lower, &upper)?;
    Ok(Some(
        col.into_iter()
            .enumerate()
            .map(|(i, x)| Complex64::new(if i % 2 == 0 { x } else { -x }, 0.0))
            .collect(),
    ))
}
