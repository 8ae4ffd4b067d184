//! Arnoldi and Lanczos processes, the Krylov approximation `beta V f(-tau H) e_1`
//! and the restarted Arnoldi driver.

mod approx;
mod arnoldi;
mod decomposition;
mod lanczos;
mod restart;

pub use approx::{krylov_approx, projected_first_column};
pub use arnoldi::{arnoldi, ArnoldiProcess, DEFAULT_BREAKDOWN_TOL};
pub use decomposition::{KrylovDecomposition, Projected};
pub use lanczos::{lanczos, LanczosProcess};
pub use restart::{restarted_approx, CycleReport, Estimator, RestartOutcome, RestartedArnoldi};

/// Common stepping interface of [`ArnoldiProcess`] and [`LanczosProcess`].
pub trait KrylovProcess {
    /// Performs one step; returns `false` if the process had already broken down.
    fn step(&mut self) -> crate::Result<bool>;

    /// Snapshot of the decomposition after the steps taken so far.
    fn decomposition(&self) -> KrylovDecomposition;
}

impl KrylovProcess for ArnoldiProcess<'_> {
    fn step(&mut self) -> crate::Result<bool> {
        ArnoldiProcess::step(self)
    }

    fn decomposition(&self) -> KrylovDecomposition {
        ArnoldiProcess::decomposition(self)
    }
}

impl KrylovProcess for LanczosProcess<'_> {
    fn step(&mut self) -> crate::Result<bool> {
        LanczosProcess::step(self)
    }

    fn decomposition(&self) -> KrylovDecomposition {
        LanczosProcess::decomposition(self)
    }
}
