//! Sparse CSR operators, the two test-matrix families, Matrix Market I/O
//! and logarithmic-norm estimation.

mod csr;
mod generators;
mod lognorm;
mod mtx;

pub use csr::CsrMatrix;
pub use generators::{build_convection_diffusion, build_diag_spectrum, convection_diffusion_h, SpectralInterval};
pub use lognorm::{extreme_eigenvalues, log_norm_neg, DEFAULT_LOG_NORM_TOL, MAX_LANCZOS_ITERATIONS};
pub use mtx::{read_matrix_market, write_matrix_market};
