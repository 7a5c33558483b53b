//! Statevector and density-matrix simulation with depolarizing gate noise,
//! basis-change measurement and shot sampling.

mod circuit;
mod engine;
mod measure;
mod noise;
mod state;

pub use circuit::{Angle, BoundGate, Circuit, Gate, GateKind, Matrix2};
pub use engine::{run_density, run_statevector};
pub use measure::{
    apply_readout_noise, basis_distribution, expectation_from_counts, expectation_from_distribution, sample_counts,
    sample_distribution, Counts,
};
pub use noise::{depolarize, NoiseModel, SINGLE_TO_TWO_QUBIT_RATIO};
pub use state::QuantumState;
