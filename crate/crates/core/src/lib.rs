//! Exact-arithmetic workbench for the rank-1 Heisenberg vertex algebra
//! `M_1(1)` and Mathieu-Zhao subspaces.

pub mod classical;
pub mod cli;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod modes;
pub mod report;
pub mod setcalc;
pub mod vamz;
pub mod zhu;
mod text;

pub use error::{Error, Result};
