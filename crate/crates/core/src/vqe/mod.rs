//! Energy evaluation through the measurement pipeline, derivative-free
//! minimization and the one-parameter sweep-and-fit procedure.

mod evaluator;
mod fit;
mod optimize;

pub use evaluator::{Backend, EnergyEstimate, EnergyEvaluator};
pub use fit::{default_grid, fit_cosine, CosineFit};
pub use optimize::{minimize, NelderMeadConfig, Optimizer, SpsaConfig, VqeOutcome};

use serde::Serialize;

use crate::par::map_indexed;
use crate::{Error, Result};

/// Grid size used when no grid is given.
pub const DEFAULT_GRID_POINTS: usize = 25;

/// Runs `optimizer` on the evaluator's objective (readout-mitigated when
/// a mitigation matrix is set), one sampling stream per evaluation.
pub fn run_vqe(ev: &EnergyEvaluator, theta0: &[f64], optimizer: &Optimizer) -> Result<VqeOutcome> {
    let mut f = |x: &[f64], k: u64| -> Result<f64> { Ok(ev.estimate(x, k)?.best()) };
    minimize(&mut f, theta0, optimizer)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepFit {
    pub grid: Vec<f64>,
    pub raw: Vec<f64>,
    pub mitigated: Option<Vec<f64>>,
    pub fit_raw: CosineFit,
    pub fit_mitigated: Option<CosineFit>,
}

impl SweepFit {
    /// The readout-mitigated fit when available.
    pub fn best(&self) -> &CosineFit {
        self.fit_mitigated.as_ref().unwrap_or(&self.fit_raw)
    }
}

/// Evaluates a one-parameter ansatz on `grid` (grid point `i` uses
/// sampling stream `i`) and fits `C + A·cos(θ − α)` to the raw and the
/// readout-mitigated energies.
pub fn sweep_and_fit(ev: &EnergyEvaluator, grid: &[f64]) -> Result<SweepFit> {
    if ev.ansatz().n_params() != 1 {
        return Err(Error::ParameterCount { expected: 1, actual: ev.ansatz().n_params() });
    }
    let estimates: Vec<_> = map_indexed(grid.len(), |i| ev.estimate(&[grid[i]], i as u64)).into_iter().collect::<Result<_>>()?;
    let raw: Vec<f64> = estimates.iter().map(|e| e.raw).collect();
    let mitigated: Option<Vec<f64>> = estimates.iter().map(|e| e.readout_mitigated).collect();
    let fit_raw = fit_cosine(grid, &raw)?;
    let fit_mitigated = mitigated.as_ref().map(|m| fit_cosine(grid, m)).transpose()?;
    Ok(SweepFit { grid: grid.to_vec(), raw, mitigated, fit_raw, fit_mitigated })
}
