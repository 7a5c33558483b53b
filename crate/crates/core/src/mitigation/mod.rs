//! Readout unfolding and reference-state error mitigation.

mod confusion;
mod rem;
mod unfold;

pub use confusion::{calibrate_confusion, ConfusionMatrix, ReadoutSampler};
pub use rem::{error_metrics, rem_apply, rem_apply_curve, rem_delta, RemReport};
pub use unfold::{kkt_residual, unfold};
