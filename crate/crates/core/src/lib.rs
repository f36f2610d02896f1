//! HP lattice protein folding as binary optimization.
//!
//! A chain of hydrophobic (`H`) and polar (`P`) beads walks on the cubic
//! lattice with 26 neighbours per site. Each step is a turn with components
//! in `{-1, 0, 1}`, written as the difference of two bits per axis. The
//! [`encoder`] builds a quadratic objective over those bits that rewards
//! hydrophobic contacts and penalizes zero turns, overlaps and crossings;
//! [`solvers`] minimize it (annealing, exhaustive search, statevector
//! CVaR-VQE) and post-select valid folds; [`model`] decodes, validates and
//! scores conformations; [`pipeline`] runs the whole loop over repeated
//! random axis draws and writes results.

pub mod encoder;
pub mod error;
pub mod io;
pub mod ising;
pub mod model;
pub mod pipeline;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
