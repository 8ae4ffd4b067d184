use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::arnoldi::{arnoldi, start_norm};
use crate::dense_funm::{DenseMatrix, MatrixFunctionSpec};
use crate::error::{KrylovError, Result};
use crate::estimates::{augmented_first_column, EstimatePair};
use crate::record::ConvergenceRecord;
use crate::sparse::CsrMatrix;
use crate::vector::{axpy, norm2};

/// Which a posteriori estimate drives a stopping rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Estimator {
    Xi1,
    Xi2,
}

impl Estimator {
    /// The relative estimate selected from `est`.
    pub fn relative(&self, est: &EstimatePair) -> f64 {
        match self {
            Estimator::Xi1 => est.xi1_rel,
            Estimator::Xi2 => est.xi2_rel,
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Estimator::Xi1 => "xi1",
            Estimator::Xi2 => "xi2",
        })
    }
}

impl FromStr for Estimator {
    type Err = KrylovError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi1" => Ok(Estimator::Xi1),
            "xi2" => Ok(Estimator::Xi2),
            other => Err(KrylovError::invalid(format!("unknown estimator '{other}'"))),
        }
    }
}

/// Result of one restart cycle.
#[derive(Clone, Debug)]
pub struct CycleReport {
    pub cycle: usize,
    /// Total Krylov dimension after this cycle.
    pub dimension: usize,
    pub estimates: EstimatePair,
    /// The cycle broke down, so the accumulated approximation is exact.
    pub exact: bool,
}

/// Restarted Arnoldi for `f(-tau A) v` with cycles of `block` steps.
///
/// The projected matrices of all cycles accumulate into a block lower
/// bidiagonal Hessenberg matrix `H_acc`; cycle `k` adds
/// `beta V_k [f(-tau H_acc) e_1]` restricted to the coordinates of its block.
#[derive(Clone, Debug)]
pub struct RestartedArnoldi<'a> {
    a: &'a CsrMatrix,
    spec: MatrixFunctionSpec,
    block: usize,
    breakdown_tol: f64,
    beta: f64,
    next_start: Vec<f64>,
    h_acc: DenseMatrix,
    last_h_next: f64,
    approx: Vec<f64>,
    cycles: usize,
    exact: bool,
}

impl<'a> RestartedArnoldi<'a> {
    pub fn new(a: &'a CsrMatrix, v: &[f64], spec: MatrixFunctionSpec, block: usize) -> Result<Self> {
        if block < 2 {
            return Err(KrylovError::invalid("restart block size must be at least 2"));
        }
        let beta = start_norm(a, v)?;
        Ok(RestartedArnoldi {
            a,
            spec,
            block: block.min(a.n()),
            breakdown_tol: super::DEFAULT_BREAKDOWN_TOL,
            beta,
            next_start: v.iter().map(|x| x / beta).collect(),
            h_acc: DenseMatrix::zeros(0, 0),
            last_h_next: 0.0,
            approx: vec![0.0; a.n()],
            cycles: 0,
            exact: false,
        })
    }

    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn accumulated_hessenberg(&self) -> &DenseMatrix {
        &self.h_acc
    }

    /// `h_{m+1,m}` of the most recent cycle.
    pub fn last_h_next(&self) -> f64 {
        self.last_h_next
    }

    pub fn approximation(&self) -> &[f64] {
        &self.approx
    }

    pub fn is_exhausted(&self) -> bool {
        self.exact
    }

    /// Runs one cycle; returns `None` once a cycle has broken down.
    pub fn cycle(&mut self) -> Result<Option<CycleReport>> {
        if self.exact {
            return Ok(None);
        }
        let dec = arnoldi(self.a, &self.next_start, self.block, self.breakdown_tol)?;
        let old = self.h_acc.rows();
        let m = dec.m();
        let h = dec.projected.to_dense();
        let mut acc = DenseMatrix::zeros(old + m, old + m);
        for i in 0..old {
            for j in 0..old {
                acc[(i, j)] = self.h_acc[(i, j)];
            }
        }
        for i in 0..m {
            for j in 0..m {
                acc[(old + i, old + j)] = h[(i, j)];
            }
        }
        if old > 0 {
            acc[(old, old - 1)] = self.last_h_next.into();
        }
        self.h_acc = acc;

        let c = augmented_first_column(&self.h_acc, self.h_acc[(0, 0)], self.spec)?;
        let coeffs: Vec<f64> = c[old..old + m].iter().map(|z| self.beta * z.re).collect();
        for (v, &coef) in dec.basis.iter().zip(&coeffs) {
            axpy(coef, v, &mut self.approx);
        }
        self.last_h_next = dec.h_next;
        self.exact = dec.exact;
        self.next_start = dec.v_next;
        self.cycles += 1;
        let s = old + m;
        let estimates = EstimatePair::from_parts(
            self.beta * dec.h_next * c[s - 1].norm(),
            self.beta * dec.h_next * c[s].norm(),
            norm2(&self.approx),
        );
        Ok(Some(CycleReport {
            cycle: self.cycles,
            dimension: s,
            estimates,
            exact: self.exact,
        }))
    }
}

/// Outcome of [`restarted_approx`].
#[derive(Clone, Debug)]
pub struct RestartOutcome {
    pub approx: Vec<f64>,
    pub records: Vec<ConvergenceRecord>,
    pub converged: bool,
}

/// Restarted Arnoldi until the chosen relative estimate is at most `eps` or
/// `max_cycles` cycles have run. An unconverged run still returns its best
/// approximation with `converged == false`.
pub fn restarted_approx(
    a: &CsrMatrix,
    v: &[f64],
    spec: MatrixFunctionSpec,
    block: usize,
    max_cycles: usize,
    eps: f64,
    estimator: Estimator,
) -> Result<RestartOutcome> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(KrylovError::invalid("tolerance must be positive"));
    }
    let mut run = RestartedArnoldi::new(a, v, spec, block)?;
    let mut records = Vec::new();
    let mut converged = false;
    while run.cycles() < max_cycles {
        let start = Instant::now();
        let Some(report) = run.cycle()? else { break };
        records.push(ConvergenceRecord::new(
            report.dimension,
            report.estimates,
            start.elapsed().as_secs_f64() * 1e3,
        ));
        if report.exact || estimator.relative(&report.estimates) <= eps {
            converged = true;
            break;
        }
    }
    Ok(RestartOutcome {
        approx: run.approx,
        records,
        converged,
    })
}
