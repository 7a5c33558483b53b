//! Noisy VQE simulation with reference-state error mitigation (REM) and
//! constrained readout unfolding.

pub mod ansatz;
pub mod chemdata;
mod error;
pub mod experiments;
pub mod mitigation;
mod par;
pub mod pauli;
pub mod rng;
pub mod sim;
pub mod vqe;

pub use error::{Error, Result};
