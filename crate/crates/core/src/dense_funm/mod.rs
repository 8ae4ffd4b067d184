//! Dense small-matrix function kernels and scalar divided differences.
//!
//! All matrix functions here are evaluated as `kind(-tau * M)` for a
//! [`MatrixFunctionSpec`]; the same convention carries through divided
//! differences and the φ-functions built from them.

mod divdiff;
mod eigen;
mod expm;
mod funm;
mod matrix;
mod metzler;
mod scalar;
mod tridiag;

pub use divdiff::{divided_difference, phi1_scalar, NodeSequence};
pub use eigen::hessenberg_eigenvalues;
pub use expm::{cos_sin_dense, expm_dense};
pub(crate) use funm::spectral_first_column;
pub use funm::{funm_hermitian, FunctionKind, MatrixFunctionSpec};
pub use matrix::DenseMatrix;
pub(crate) use metzler::expm_metzler_first_column;
pub use tridiag::{symtrid_eig, SymTridEig, SymTridiagonal};
