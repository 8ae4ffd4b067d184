//! Per-step convergence data collected by the drivers.

use crate::bounds::BoundReport;
use crate::estimates::EstimatePair;

/// Estimates (and optionally true errors and bounds) after one step or cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    /// Krylov dimension; cumulative across restart cycles.
    pub step: usize,
    pub estimates: EstimatePair,
    pub true_abs: Option<f64>,
    pub true_rel: Option<f64>,
    pub bounds: Option<BoundReport>,
    pub wall_ms: f64,
}

impl ConvergenceRecord {
    pub fn new(step: usize, estimates: EstimatePair, wall_ms: f64) -> Self {
        ConvergenceRecord {
            step,
            estimates,
            true_abs: None,
            true_rel: None,
            bounds: None,
            wall_ms,
        }
    }

    pub fn xi1_rel(&self) -> f64 {
        self.estimates.xi1_rel
    }

    pub fn xi2_rel(&self) -> f64 {
        self.estimates.xi2_rel
    }
}
