use num_complex::Complex64;

use super::augment::phi_moments;
use crate::dense_funm::{hessenberg_eigenvalues, symtrid_eig, MatrixFunctionSpec, NodeSequence};
use crate::error::{KrylovError, Result};
use crate::krylov::{KrylovDecomposition, Projected};
use crate::sparse::CsrMatrix;
use crate::vector::norm2_complex;

/// Largest number of expansion terms computed.
pub const MAX_TERMS: usize = 5000;

/// One term `coefficient * direction` of the error expansion.
#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    pub k: usize,
    /// `beta h_next e_m^T phi_k(H) e_1`.
    pub coefficient: Complex64,
    /// `(A - z_{k-2} I) ... (A - z_0 I) v_next`.
    pub direction: Vec<Complex64>,
    pub term_norm: f64,
}

impl ExpansionTerm {
    pub fn vector(&self) -> Vec<Complex64> {
        self.direction.iter().map(|d| d * self.coefficient).collect()
    }
}

/// Terms of the error expansion `f(A)v - f_m = sum_k term_k`.
#[derive(Clone, Debug)]
pub struct ErrorExpansion {
    pub terms: Vec<ExpansionTerm>,
    /// Set when the terms became negligible before the requested count.
    pub stopped_early: bool,
}

impl ErrorExpansion {
    /// Sum of the first `k` terms.
    pub fn partial_sum(&self, k: usize) -> Vec<Complex64> {
        let n = self.terms.first().map_or(0, |t| t.direction.len());
        let mut sum = vec![Complex64::new(0.0, 0.0); n];
        for term in self.terms.iter().take(k) {
            for (s, d) in sum.iter_mut().zip(&term.direction) {
                *s += d * term.coefficient;
            }
        }
        sum
    }
}

/// How interpolation nodes for the expansion are chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum NodePolicy {
    /// Every node equals `h_11`.
    Confluent,
    /// Eigenvalues of the projected matrix, sorted so equal values are adjacent.
    Ritz,
    Explicit(NodeSequence),
}

impl NodePolicy {
    /// `count` nodes for `dec`; shorter sequences are extended by repeating the last node.
    pub fn nodes(&self, dec: &KrylovDecomposition, count: usize) -> Result<NodeSequence> {
        let base = match self {
            NodePolicy::Confluent => NodeSequence::confluent(Complex64::new(dec.projected.first_entry(), 0.0), 1)?,
            NodePolicy::Ritz => {
                let values: Vec<Complex64> = match &dec.projected {
                    Projected::Tridiagonal(t) => symtrid_eig(t)?
                        .values
                        .into_iter()
                        .map(|x| Complex64::new(x, 0.0))
                        .collect(),
                    Projected::Hessenberg(h) => hessenberg_eigenvalues(h)?,
                };
                NodeSequence::sorted(values)?
            }
            NodePolicy::Explicit(nodes) => nodes.clone(),
        };
        Ok(base.take_extended(count))
    }
}

/// Up to `count` terms of the error expansion of the Krylov approximation.
///
/// Stops early once a term norm drops below `1e-2 * eps_mach` times the norm
/// of the running sum. Moments are computed in chunks that double in size,
/// so an early stop avoids evaluating the full augmented matrix.
pub fn expansion_terms(
    a: &CsrMatrix,
    dec: &KrylovDecomposition,
    spec: MatrixFunctionSpec,
    nodes: &NodeSequence,
    count: usize,
) -> Result<ErrorExpansion> {
    if count == 0 {
        return Err(KrylovError::invalid("at least one expansion term is required"));
    }
    let count = count.min(MAX_TERMS);
    let nodes = nodes.take_extended(count);
    let z = nodes.as_slice();
    let h = dec.projected.to_dense();
    let scale = dec.beta * dec.h_next;

    let mut terms: Vec<ExpansionTerm> = Vec::new();
    let mut direction: Vec<Complex64> = dec.v_next.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut sum = vec![Complex64::new(0.0, 0.0); a.n()];
    let mut chunk = count.min(64);
    let mut moments = phi_moments(&h, &nodes.take_extended(chunk), spec)?;
    for k in 1..=count {
        if k > moments.len() {
            chunk = (2 * chunk).min(count);
            moments = phi_moments(&h, &nodes.take_extended(chunk), spec)?;
        }
        if k > 1 {
            let shifted = a.matvec_complex(&direction)?;
            direction = shifted
                .iter()
                .zip(&direction)
                .map(|(ad, d)| ad - d * z[k - 2])
                .collect();
        }
        let coefficient = moments[k - 1] * scale;
        let term_norm = coefficient.norm() * norm2_complex(&direction);
        for (s, d) in sum.iter_mut().zip(&direction) {
            *s += d * coefficient;
        }
        terms.push(ExpansionTerm {
            k,
            coefficient,
            direction: direction.clone(),
            term_norm,
        });
        if k < count && term_norm < 1e-2 * f64::EPSILON * norm2_complex(&sum) {
            return Ok(ErrorExpansion {
                terms,
                stopped_early: true,
            });
        }
    }
    Ok(ErrorExpansion {
        terms,
        stopped_early: false,
    })
}

/// Number of terms after which the expansion tail is negligible for `||A|| = norm_a`:
/// `ceil(20 e norm_a)`.
pub fn tail_index(norm_a: f64) -> usize {
    (20.0 * std::f64::consts::E * norm_a).ceil() as usize
}
