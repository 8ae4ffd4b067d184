//! A posteriori error estimates, augmented matrices for φ-function moments
//! and the truncated error expansion of the Krylov approximation.

mod augment;
mod expansion;
mod xi;

pub use augment::{augment, augmented_first_column, phi_moment, phi_moments, AugmentedMatrix};
pub use expansion::{expansion_terms, tail_index, ErrorExpansion, ExpansionTerm, NodePolicy, MAX_TERMS};
pub use xi::{xi_estimates, xi_estimates_restarted, EstimatePair};
