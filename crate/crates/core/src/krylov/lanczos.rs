use super::arnoldi::{check_steps, start_norm, DEFAULT_BREAKDOWN_TOL};
use super::decomposition::{KrylovDecomposition, Projected};
use crate::dense_funm::SymTridiagonal;
use crate::error::{KrylovError, Result};
use crate::sparse::CsrMatrix;
use crate::vector::{axpy, dot, norm2};

/// Stepwise symmetric Lanczos process producing a tridiagonal projection.
#[derive(Clone, Debug)]
pub struct LanczosProcess<'a> {
    a: &'a CsrMatrix,
    basis: Vec<Vec<f64>>,
    alphas: Vec<f64>,
    /// `etas[j]` couples `v_{j+1}` and `v_{j+2}`.
    etas: Vec<f64>,
    beta: f64,
    threshold: f64,
    reorthogonalize: bool,
    exact: bool,
}

impl<'a> LanczosProcess<'a> {
    /// Fails unless `a` is exactly symmetric.
    pub fn new(a: &'a CsrMatrix, v: &[f64], reorthogonalize: bool) -> Result<Self> {
        if !a.is_symmetric() {
            return Err(KrylovError::invalid("Lanczos requires a symmetric matrix"));
        }
        Self::new_unchecked(a, v, reorthogonalize)
    }

    pub(crate) fn new_unchecked(a: &'a CsrMatrix, v: &[f64], reorthogonalize: bool) -> Result<Self> {
        let beta = start_norm(a, v)?;
        Ok(LanczosProcess {
            a,
            basis: vec![v.iter().map(|x| x / beta).collect()],
            alphas: Vec::new(),
            etas: Vec::new(),
            beta,
            threshold: DEFAULT_BREAKDOWN_TOL * a.frobenius_norm(),
            reorthogonalize,
            exact: false,
        })
    }

    pub fn steps(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_exhausted(&self) -> bool {
        self.exact
    }

    pub fn step(&mut self) -> Result<bool> {
        if self.exact {
            return Ok(false);
        }
        let j = self.alphas.len();
        let mut w = self.a.matvec(&self.basis[j])?;
        if j > 0 {
            axpy(-self.etas[j - 1], &self.basis[j - 1], &mut w);
        }
        let alpha = dot(&w, &self.basis[j]);
        axpy(-alpha, &self.basis[j], &mut w);
        if self.reorthogonalize {
            for v in &self.basis {
                let c = dot(&w, v);
                axpy(-c, v, &mut w);
            }
        }
        self.alphas.push(alpha);
        let eta = norm2(&w);
        if eta <= self.threshold || j + 1 == self.a.n() {
            self.exact = true;
            self.etas.push(0.0);
        } else {
            self.etas.push(eta);
            self.basis.push(w.into_iter().map(|x| x / eta).collect());
        }
        Ok(true)
    }

    /// Current Ritz values (eigenvalues of the tridiagonal projection), ascending.
    pub fn ritz_values(&self) -> Result<Vec<f64>> {
        let m = self.alphas.len();
        let t = SymTridiagonal::new(self.alphas.clone(), self.etas[..m.saturating_sub(1)].to_vec())?;
        Ok(crate::dense_funm::symtrid_eig(&t)?.values)
    }

    pub fn decomposition(&self) -> KrylovDecomposition {
        let m = self.alphas.len();
        assert!(m > 0, "no Lanczos step taken yet");
        let t = SymTridiagonal::new(self.alphas.clone(), self.etas[..m - 1].to_vec())
            .expect("Lanczos coefficients are finite");
        let v_next = if self.exact {
            vec![0.0; self.a.n()]
        } else {
            self.basis[m].clone()
        };
        KrylovDecomposition {
            basis: self.basis[..m].to_vec(),
            projected: Projected::Tridiagonal(t),
            h_next: self.etas[m - 1],
            v_next,
            beta: self.beta,
            exact: self.exact,
        }
    }
}

/// Runs `m` Lanczos steps (fewer on breakdown) on a symmetric matrix.
pub fn lanczos(a: &CsrMatrix, v: &[f64], m: usize, reorthogonalize: bool) -> Result<KrylovDecomposition> {
    check_steps(a, m)?;
    let mut process = LanczosProcess::new(a, v, reorthogonalize)?;
    while process.steps() < m && process.step()? {}
    Ok(process.decomposition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::{build_diag_spectrum, SpectralInterval};
    use crate::vector::random_unit_vector;

    #[test]
    fn structure_on_example_one_matrix() {
        let a = build_diag_spectrum(1001, SpectralInterval::new(0.0, 40.0).unwrap()).unwrap();
        let v = random_unit_vector(1001, 3);
        let dec = lanczos(&a, &v, 100, true).unwrap();
        let t = dec.tridiagonal().unwrap();
        assert!(t.offdiag().iter().all(|&x| x > 0.0));
        assert!(dec.h_next > 0.0);
        assert!(dec.orthogonality_defect() < 1e-10);
        for (x, y) in dec.basis[0].iter().zip(&v) {
            assert!((dec.beta * x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn exhaustion_on_small_diagonal() {
        let a = CsrMatrix::from_diagonal(&[1.0, 2.0, 3.0, 4.0]);
        let dec = lanczos(&a, &[1.0, 1.0, 1.0, 1.0], 4, true).unwrap();
        assert_eq!(dec.h_next, 0.0);
        assert!(dec.exact);
    }

    #[test]
    fn nonsymmetric_rejected() {
        let a = CsrMatrix::from_triplets(2, &[(0, 1, 1.0)]).unwrap();
        assert!(lanczos(&a, &[1.0, 1.0], 1, true).is_err());
    }
}
