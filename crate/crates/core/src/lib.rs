//! Thermal entanglement of two coupled spin-1 particles.
//!
//! The pipeline is [`spin::build_hamiltonian`] → [`thermal::gibbs_state`] →
//! [`criteria::negativity`] / [`criteria::realignment_criterion`], with
//! [`analysis`] driving it over parameter grids.

// `!(x > 0.0)` and friends are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod criteria;
pub mod error;
pub mod matrix;
pub mod spin;
pub mod thermal;

pub use error::{Error, Result};
pub use num_complex::Complex64;
