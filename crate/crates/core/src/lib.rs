//! Krylov subspace approximations to `f(A) v` for sparse `A` with
//! `f(z) = exp(-tau z)`, `cos(-tau z)` or `sin(-tau z)`, together with
//! a posteriori error estimates, truncated error expansions and explicit
//! upper bounds on the error of the Arnoldi/Lanczos approximation.

pub mod bounds;
pub mod dense_funm;
pub mod error;
pub mod estimates;
pub mod harness;
pub mod krylov;
pub mod oracle;
pub mod record;
pub mod sparse;
pub mod vector;

pub use error::{KrylovError, Result};
