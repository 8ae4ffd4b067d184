use super::decomposition::{KrylovDecomposition, Projected};
use crate::dense_funm::DenseMatrix;
use crate::error::{KrylovError, Result};
use crate::sparse::CsrMatrix;
use crate::vector::{axpy, dot, norm2};

/// Default relative threshold for detecting a lucky breakdown.
pub const DEFAULT_BREAKDOWN_TOL: f64 = 1e-14;

/// Stepwise Arnoldi process with modified Gram-Schmidt.
///
/// By default every new vector gets a second Gram-Schmidt pass, which keeps
/// the basis orthonormal to working precision for nonnormal operators.
#[derive(Clone, Debug)]
pub struct ArnoldiProcess<'a> {
    a: &'a CsrMatrix,
    /// `v_1 .. v_{m+1}` (only `v_1 .. v_m` after a breakdown).
    basis: Vec<Vec<f64>>,
    /// Column `j` of the extended Hessenberg matrix, entries `0..=j+1`.
    columns: Vec<Vec<f64>>,
    beta: f64,
    threshold: f64,
    reorthogonalize: bool,
    exact: bool,
}

impl<'a> ArnoldiProcess<'a> {
    pub fn new(a: &'a CsrMatrix, v: &[f64], breakdown_tol: f64) -> Result<Self> {
        let beta = start_norm(a, v)?;
        Ok(ArnoldiProcess {
            a,
            basis: vec![v.iter().map(|x| x / beta).collect()],
            columns: Vec::new(),
            beta,
            threshold: breakdown_tol * a.frobenius_norm(),
            reorthogonalize: true,
            exact: false,
        })
    }

    /// Switches to a single Gram-Schmidt pass.
    pub fn without_reorthogonalization(mut self) -> Self {
        self.reorthogonalize = false;
        self
    }

    pub fn steps(&self) -> usize {
        self.columns.len()
    }

    pub fn is_exhausted(&self) -> bool {
        self.exact
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Performs one Arnoldi step; returns `false` if the process had already broken down.
    pub fn step(&mut self) -> Result<bool> {
        if self.exact {
            return Ok(false);
        }
        let j = self.columns.len();
        let mut w = self.a.matvec(&self.basis[j])?;
        let mut col = vec![0.0; j + 2];
        let passes = if self.reorthogonalize { 2 } else { 1 };
        for _ in 0..passes {
            for (i, v) in self.basis.iter().enumerate() {
                let c = dot(&w, v);
                axpy(-c, v, &mut w);
                col[i] += c;
            }
        }
        let h = norm2(&w);
        let n = self.a.n();
        if h <= self.threshold || j + 1 == n {
            self.exact = true;
            col[j + 1] = 0.0;
        } else {
            col[j + 1] = h;
            self.basis.push(w.into_iter().map(|x| x / h).collect());
        }
        self.columns.push(col);
        Ok(true)
    }

    /// Snapshot of the decomposition after the steps taken so far.
    pub fn decomposition(&self) -> KrylovDecomposition {
        let m = self.columns.len();
        assert!(m > 0, "no Arnoldi step taken yet");
        let mut h = DenseMatrix::zeros(m, m);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate().take(m) {
                h[(i, j)] = x.into();
            }
        }
        let h_next = self.columns[m - 1][m];
        let v_next = if self.exact {
            vec![0.0; self.a.n()]
        } else {
            self.basis[m].clone()
        };
        KrylovDecomposition {
            basis: self.basis[..m].to_vec(),
            projected: Projected::Hessenberg(h),
            h_next,
            v_next,
            beta: self.beta,
            exact: self.exact,
        }
    }
}

pub(crate) fn start_norm(a: &CsrMatrix, v: &[f64]) -> Result<f64> {
    if v.len() != a.n() {
        return Err(KrylovError::Dimension {
            expected: a.n(),
            found: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(KrylovError::invalid("starting vector has non-finite entries"));
    }
    let beta = norm2(v);
    if beta == 0.0 {
        return Err(KrylovError::invalid("starting vector is zero"));
    }
    Ok(beta)
}

pub(crate) fn check_steps(a: &CsrMatrix, m: usize) -> Result<()> {
    if m == 0 || m > a.n() {
        return Err(KrylovError::invalid(format!(
            "number of steps must be in 1..={}, got {m}",
            a.n()
        )));
    }
    Ok(())
}

/// Runs `m` Arnoldi steps (fewer on breakdown).
pub fn arnoldi(a: &CsrMatrix, v: &[f64], m: usize, breakdown_tol: f64) -> Result<KrylovDecomposition> {
    check_steps(a, m)?;
    let mut process = ArnoldiProcess::new(a, v, breakdown_tol)?;
    while process.steps() < m && process.step()? {}
    Ok(process.decomposition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense_funm::hessenberg_eigenvalues;

    #[test]
    fn identity_breaks_down_immediately() {
        let a = CsrMatrix::identity(5);
        let dec = arnoldi(&a, &[1.0, 2.0, 0.0, 0.0, 1.0], 1, DEFAULT_BREAKDOWN_TOL).unwrap();
        assert!(dec.exact);
        assert_eq!(dec.h_next, 0.0);
        assert!((dec.projected.to_dense()[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn full_capture_of_two_by_two() {
        let a = CsrMatrix::from_diagonal(&[1.0, 2.0]);
        let s = 0.5f64.sqrt();
        let dec = arnoldi(&a, &[s, s], 2, DEFAULT_BREAKDOWN_TOL).unwrap();
        assert_eq!(dec.h_next, 0.0);
        let mut ev: Vec<f64> = hessenberg_eigenvalues(&dec.projected.to_dense())
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let a = CsrMatrix::identity(3);
        assert!(arnoldi(&a, &[0.0; 3], 1, DEFAULT_BREAKDOWN_TOL).is_err());
        assert!(arnoldi(&a, &[1.0; 3], 4, DEFAULT_BREAKDOWN_TOL).is_err());
        assert!(arnoldi(&a, &[1.0; 2], 1, DEFAULT_BREAKDOWN_TOL).is_err());
    }

    #[test]
    fn stepping_matches_one_shot() {
        let a = crate::sparse::build_convection_diffusion(3, 10.0, 20.0).unwrap();
        let v = vec![1.0; 27];
        let mut p = ArnoldiProcess::new(&a, &v, DEFAULT_BREAKDOWN_TOL).unwrap();
        for _ in 0..6 {
            p.step().unwrap();
        }
        let one = arnoldi(&a, &v, 6, DEFAULT_BREAKDOWN_TOL).unwrap();
        let snap = p.decomposition();
        assert_eq!(snap.projected, one.projected);
        assert_eq!(snap.h_next, one.h_next);
    }
}
