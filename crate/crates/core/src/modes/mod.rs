//! Borcherds mode products `A(n)w` on the Fock space, computed by an
//! iterate-formula recursion (memoized) and, independently, by normal-ordered
//! coefficient extraction. Also the Virasoro modes of `ω = ½ a(-1)^2|0>` and
//! checkers for the identities these products satisfy.

mod checks;
mod engine;
mod oracle;
pub mod suite;

pub use checks::{
    central_charge, check_commutator, check_l0_grading, check_oracle, check_pseudo_associativity,
    check_skew_symmetry, check_vacuum_axioms, check_virasoro_bracket, Discrepancy, DiscrepancyJson,
};
pub use engine::{mode_product, ModeEngine};
pub use oracle::mode_product_oracle;

use crate::fock::FockState;
use crate::linalg::rat_frac;

/// The conformal vector `ω = ½ a(-1)^2|0>`.
pub fn conformal_vector() -> FockState {
    FockState::from_parts(&[1, 1]).scale(&rat_frac(1, 2))
}

/// `L(n) = ω(n+1)`.
pub fn virasoro_l(engine: &ModeEngine, n: i64, w: &FockState) -> FockState {
    engine.mode_product(&conformal_vector(), n + 1, w)
}
