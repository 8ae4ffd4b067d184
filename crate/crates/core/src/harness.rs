//! Step-by-step drivers that record estimates, true errors and bounds.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::bounds::{bound_report, HermitianSpectrum};
use crate::dense_funm::MatrixFunctionSpec;
use crate::error::{KrylovError, Result};
use crate::estimates::xi_estimates;
use crate::krylov::{ArnoldiProcess, Estimator, KrylovProcess, LanczosProcess, RestartedArnoldi};
use crate::oracle::{true_error, OracleResult};
use crate::record::ConvergenceRecord;
use crate::sparse::CsrMatrix;

/// Default number of restart cycles.
pub const DEFAULT_MAX_CYCLES: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Arnoldi,
    Lanczos,
    Restarted { block: usize },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Arnoldi => f.write_str("arnoldi"),
            Method::Lanczos => f.write_str("lanczos"),
            Method::Restarted { block } => write!(f, "restart:{block}"),
        }
    }
}

impl FromStr for Method {
    type Err = KrylovError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arnoldi" => Ok(Method::Arnoldi),
            "lanczos" => Ok(Method::Lanczos),
            _ => {
                let block = s
                    .strip_prefix("restart:")
                    .and_then(|b| b.parse().ok())
                    .ok_or_else(|| KrylovError::invalid(format!("unknown method '{s}'")))?;
                Ok(Method::Restarted { block })
            }
        }
    }
}

/// Inputs for bound evaluation at every step.
#[derive(Clone, Copy, Debug)]
pub struct BoundSettings {
    pub mu2: f64,
    pub spectrum: Option<HermitianSpectrum>,
    pub n_t: usize,
}

/// How a run proceeds and when it stops.
#[derive(Clone, Copy, Debug)]
pub struct RunSettings {
    pub method: Method,
    pub spec: MatrixFunctionSpec,
    pub eps: f64,
    /// Step cap for plain runs, cycle cap for restarted runs.
    pub max_iterations: usize,
    /// Estimate used for stopping when no oracle drives termination.
    pub estimator: Estimator,
    /// Stop on the true relative error whenever an oracle is supplied.
    pub stop_on_true_error: bool,
    pub bounds: Option<BoundSettings>,
}

impl RunSettings {
    pub fn new(method: Method, spec: MatrixFunctionSpec, eps: f64, max_iterations: usize) -> Self {
        RunSettings {
            method,
            spec,
            eps,
            max_iterations,
            estimator: Estimator::Xi1,
            stop_on_true_error: true,
            bounds: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub records: Vec<ConvergenceRecord>,
    pub approx: Vec<f64>,
    pub converged: bool,
}

/// Runs the configured method, recording one [`ConvergenceRecord`] per step
/// (or per cycle for restarts).
pub fn run(a: &CsrMatrix, v: &[f64], settings: &RunSettings, oracle: Option<&OracleResult>) -> Result<RunResult> {
    if settings.eps.is_nan() || settings.eps <= 0.0 {
        return Err(KrylovError::invalid("tolerance must be positive"));
    }
    match settings.method {
        Method::Arnoldi => {
            let mut p = ArnoldiProcess::new(a, v, crate::krylov::DEFAULT_BREAKDOWN_TOL)?;
            run_plain(a, settings, oracle, &mut p)
        }
        Method::Lanczos => run_plain(a, settings, oracle, &mut LanczosProcess::new(a, v, true)?),
        Method::Restarted { block } => run_restarted(a, v, settings, block, oracle),
    }
}

fn run_plain(
    a: &CsrMatrix,
    settings: &RunSettings,
    oracle: Option<&OracleResult>,
    process: &mut impl KrylovProcess,
) -> Result<RunResult> {
    let cap = settings.max_iterations.min(a.n());
    let mut records = Vec::new();
    let mut approx = Vec::new();
    let mut converged = false;
    for m in 1..=cap {
        let start = Instant::now();
        if !process.step()? {
            break;
        }
        let dec = process.decomposition();
        let (current, est) = xi_estimates(&dec, settings.spec)?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut record = ConvergenceRecord::new(m, est, wall_ms);
        if let Some(b) = settings.bounds {
            record.bounds = Some(bound_report(a, &dec, settings.spec, b.mu2, b.spectrum, b.n_t)?);
        }
        approx = current;
        let done = finish_record(&mut record, &approx, settings, oracle)? || dec.exact;
        records.push(record);
        if done {
            converged = true;
            break;
        }
    }
    Ok(RunResult {
        records,
        approx,
        converged,
    })
}

fn run_restarted(
    a: &CsrMatrix,
    v: &[f64],
    settings: &RunSettings,
    block: usize,
    oracle: Option<&OracleResult>,
) -> Result<RunResult> {
    let mut state = RestartedArnoldi::new(a, v, settings.spec, block)?;
    let mut records = Vec::new();
    let mut converged = false;
    while state.cycles() < settings.max_iterations {
        let start = Instant::now();
        let Some(report) = state.cycle()? else { break };
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut record = ConvergenceRecord::new(report.dimension, report.estimates, wall_ms);
        let done = finish_record(&mut record, state.approximation(), settings, oracle)? || report.exact;
        records.push(record);
        if done {
            converged = true;
            break;
        }
    }
    Ok(RunResult {
        records,
        approx: state.approximation().to_vec(),
        converged,
    })
}

/// Fills true errors and reports whether the stopping rule is met.
fn finish_record(
    record: &mut ConvergenceRecord,
    approx: &[f64],
    settings: &RunSettings,
    oracle: Option<&OracleResult>,
) -> Result<bool> {
    if let Some(o) = oracle {
        let (abs, rel) = true_error(approx, o)?;
        record.true_abs = Some(abs);
        record.true_rel = Some(rel);
        if settings.stop_on_true_error {
            return Ok(rel <= settings.eps);
        }
    }
    Ok(settings.estimator.relative(&record.estimates) <= settings.eps)
}
