use num_complex::Complex64;

use super::funm::MatrixFunctionSpec;
use crate::error::{KrylovError, Result};

/// Interpolation nodes with equal values stored contiguously.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSequence {
    nodes: Vec<Complex64>,
}

impl NodeSequence {
    pub fn new(nodes: Vec<Complex64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(KrylovError::invalid("node sequence must be nonempty"));
        }
        if let Some((i, j)) = contiguity_violation(&nodes) {
            return Err(KrylovError::invalid(format!(
                "nodes {i} and {j} are equal but separated by a different node"
            )));
        }
        Ok(NodeSequence { nodes })
    }

    pub fn from_real(nodes: &[f64]) -> Result<Self> {
        Self::new(nodes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `count` copies of `z`.
    pub fn confluent(z: Complex64, count: usize) -> Result<Self> {
        Self::new(vec![z; count])
    }

    /// Sorts by (re, im) so that equal values become contiguous.
    pub fn sorted(mut nodes: Vec<Complex64>) -> Result<Self> {
        nodes.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self::new(nodes)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn first(&self) -> Complex64 {
        self.nodes[0]
    }

    /// The first `k` nodes, repeating the last one if the sequence is shorter.
    pub fn take_extended(&self, k: usize) -> NodeSequence {
        let last = *self.nodes.last().expect("nonempty");
        let nodes = (0..k).map(|i| self.nodes.get(i).copied().unwrap_or(last)).collect();
        NodeSequence { nodes }
    }
}

fn contiguity_violation(nodes: &[Complex64]) -> Option<(usize, usize)> {
    for i in 0..nodes.len() {
        let mut broken = false;
        for j in i + 1..nodes.len() {
            if nodes[j] != nodes[i] {
                broken = true;
            } else if broken {
                return Some((i, j));
            }
        }
    }
    None
}

/// `f[z_0, ..., z_k]` for `f(z) = kind(-tau z)`; repeated nodes use derivatives.
pub fn divided_difference(spec: MatrixFunctionSpec, nodes: &NodeSequence) -> Complex64 {
    let z = nodes.as_slice();
    let n = z.len();
    // column j of the Newton table, overwritten in place: table[i] = f[z_i, ..., z_{i+j}]
    let mut table: Vec<Complex64> = z.iter().map(|&zi| spec.eval(zi)).collect();
    let mut factorial = 1.0;
    for j in 1..n {
        factorial *= j as f64;
        for i in 0..n - j {
            table[i] = if z[i] == z[i + j] {
                spec.derivative(z[i], j) / factorial
            } else {
                (table[i + 1] - table[i]) / (z[i + j] - z[i])
            };
        }
    }
    table[0]
}

/// `(f(z) - f(z0)) / (z - z0)`, switching to `f'(z0)` when
/// `|z - z0| <= 1e-8 (1 + |z0|)`.
pub fn phi1_scalar(spec: MatrixFunctionSpec, z0: Complex64, z: Complex64) -> Complex64 {
    if (z - z0).norm() <= 1e-8 * (1.0 + z0.norm()) {
        spec.derivative(z0, 1)
    } else {
        (spec.eval(z) - spec.eval(z0)) / (z - z0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::E;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn zeroth_difference_is_value() {
        let spec = MatrixFunctionSpec::cos(0.5);
        let z = Complex64::new(0.3, 0.1);
        let nodes = NodeSequence::new(vec![z]).unwrap();
        assert_eq!(divided_difference(spec, &nodes), spec.eval(z));
    }

    #[test]
    fn confluent_pair_is_derivative() {
        let z0 = c(0.7);
        let nodes = NodeSequence::confluent(z0, 2).unwrap();
        let got = divided_difference(MatrixFunctionSpec::exp(1.0), &nodes);
        assert!(rel(got, c(-(-0.7f64).exp())) < 1e-15);
    }

    #[test]
    fn second_order_for_plain_exponential() {
        let nodes = NodeSequence::from_real(&[0.0, 1.0, 2.0]).unwrap();
        let got = divided_difference(MatrixFunctionSpec::exp(-1.0), &nodes);
        let want = (E * E - 2.0 * E + 1.0) / 2.0;
        assert!(rel(got, c(want)) < 1e-14);
    }

    #[test]
    fn triple_node_is_half_second_derivative() {
        let spec = MatrixFunctionSpec::sin(2.0);
        let z = c(0.3);
        let nodes = NodeSequence::confluent(z, 3).unwrap();
        let want = spec.derivative(z, 2) / 2.0;
        assert!(rel(divided_difference(spec, &nodes), want) < 1e-15);
    }

    #[test]
    fn contiguity_is_enforced() {
        assert!(NodeSequence::from_real(&[1.0, 2.0, 1.0]).is_err());
        assert!(NodeSequence::from_real(&[1.0, 1.0, 2.0, 2.0]).is_ok());
        assert!(NodeSequence::new(vec![]).is_err());
        assert!(NodeSequence::sorted(vec![c(1.0), c(2.0), c(1.0)]).is_ok());
    }

    #[test]
    fn phi1_limits_and_values() {
        let z0 = Complex64::new(0.2, -0.1);
        let spec = MatrixFunctionSpec::exp(1.0);
        assert_eq!(phi1_scalar(spec, z0, z0), -(-z0).exp());
        let got = phi1_scalar(MatrixFunctionSpec::exp(-1.0), c(0.0), c(1.0));
        assert!(rel(got, c(E - 1.0)) < 1e-15);
    }

    #[test]
    fn phi1_matches_two_node_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for kind in ["exp", "cos", "sin"] {
            let spec = MatrixFunctionSpec::new(kind.parse().unwrap(), 0.8).unwrap();
            for _ in 0..100 {
                let z0 = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let nodes = NodeSequence::new(vec![z0, z]).unwrap();
                assert!(rel(phi1_scalar(spec, z0, z), divided_difference(spec, &nodes)) < 1e-12);
            }
        }
    }

    #[test]
    fn cyclic_take_repeats_last() {
        let nodes = NodeSequence::from_real(&[1.0, 2.0]).unwrap();
        let taken = nodes.take_extended(4);
        assert_eq!(taken.as_slice(), &[c(1.0), c(2.0), c(2.0), c(2.0)]);
    }
}
