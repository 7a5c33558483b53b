use serde::Serialize;

use super::config::{Mitigation, OptimizerChoice, Problem, Reference, Resolved};
use crate::ansatz::{Ansatz, CircuitStats};
use crate::mitigation::{calibrate_confusion, ConfusionMatrix, RemReport};
use crate::par::map_indexed;
use crate::pauli::PauliHamiltonian;
use crate::rng::derive_seed;
use crate::sim::{NoiseModel, SINGLE_TO_TWO_QUBIT_RATIO};
use crate::vqe::DEFAULT_GRID_POINTS;
use crate::vqe::{default_grid, run_vqe, sweep_and_fit, Backend, EnergyEvaluator, NelderMeadConfig, Optimizer};
use crate::{Error, Result};

/// Noiseless minimum of the ansatz: the error baseline.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Oracle {
    pub e_min: f64,
    pub params: Vec<f64>,
    /// Exact energy at the reference parameters.
    pub e_ref: f64,
}

/// Tighter than the default so the baseline is not itself a noise source.
fn oracle_optimizer() -> Optimizer {
    Optimizer::NelderMead(NelderMeadConfig { ftol: 1e-10, xtol: 1e-7, max_evals: 20_000, ..Default::default() })
}

pub fn oracle(h: &PauliHamiltonian, ansatz: &Ansatz) -> Result<Oracle> {
    let ev = EnergyEvaluator::new(h.clone(), ansatz.clone())?;
    let e_ref = ev.exact_energy(ansatz.reference_params())?;
    if ansatz.n_params() == 1 {
        let fit = sweep_and_fit(&ev, &default_grid(DEFAULT_GRID_POINTS))?.fit_raw;
        return Ok(Oracle { e_min: fit.e_min, params: vec![fit.theta_min], e_ref });
    }
    let out = run_vqe(&ev, ansatz.reference_params(), &oracle_optimizer())?;
    Ok(Oracle { e_min: out.energy, params: out.params, e_ref })
}

/// Every energy produced at one geometry or noise level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub r: Option<f64>,
    pub e_exact: f64,
    pub e_exact_ref: f64,
    pub e_vqe: f64,
    pub e_vqe_readout: f64,
    pub e_vqe_ref: f64,
    pub e_vqe_ref_readout: f64,
    /// `None` when the run has no reference state.
    pub e_rem: Option<f64>,
    pub e_readout_rem: Option<f64>,
    pub params_vqe: Vec<f64>,
    pub params_readout: Vec<f64>,
    pub evaluations: usize,
    pub converged: bool,
}

impl PointResult {
    pub fn err_vqe(&self) -> f64 {
        self.e_vqe - self.e_exact
    }

    pub fn err_readout(&self) -> f64 {
        self.e_vqe_readout - self.e_exact
    }

    pub fn err_rem(&self) -> Option<f64> {
        self.e_rem.map(|e| e - self.e_exact)
    }

    pub fn err_readout_rem(&self) -> Option<f64> {
        self.e_readout_rem.map(|e| e - self.e_exact)
    }

    /// The REM error of the selected pipeline: readout-unfolded first
    /// when readout mitigation is on.
    pub fn err_selected_rem(&self, m: Mitigation) -> Option<f64> {
        if m.readout() {
            self.err_readout_rem()
        } else {
            self.err_rem()
        }
    }

    /// `(e_vqe_ref, e_vqe_min, params)` of the selected readout treatment.
    fn selected(&self, m: Mitigation) -> (f64, f64, &[f64]) {
        if m.readout() {
            (self.e_vqe_ref_readout, self.e_vqe_readout, &self.params_readout)
        } else {
            (self.e_vqe_ref, self.e_vqe, &self.params_vqe)
        }
    }
}

/// The settings `run_point` needs beyond the Hamiltonian.
#[derive(Clone, Debug)]
pub struct PointPlan<'a> {
    pub ansatz: &'a Ansatz,
    pub optimizer_choice: OptimizerChoice,
    pub optimizer: Optimizer,
    pub noise: Option<&'a NoiseModel>,
    pub mitigation_matrix: &'a ConfusionMatrix,
    pub shots: Option<u64>,
    pub reference: Reference,
}

impl<'a> PointPlan<'a> {
    pub fn from_resolved(res: &'a Resolved) -> Self {
        PointPlan {
            ansatz: &res.ansatz,
            optimizer_choice: res.optimizer_choice,
            optimizer: res.optimizer(),
            noise: res.noise.as_ref(),
            mitigation_matrix: &res.mitigation_matrix,
            shots: res.shots,
            reference: res.reference,
        }
    }
}

/// Runs the noisy VQE (raw and readout-unfolded) at one geometry and
/// applies REM with the reference state measured inside the same run:
/// the fitted curve at the reference angle for sweeps, the optimizer's
/// first evaluation otherwise.
pub fn run_point(problem: &Problem, plan: &PointPlan, oracle: &Oracle, seed: u64) -> Result<PointResult> {
    let ansatz = plan.ansatz;
    let theta_ref = ansatz.reference_params();
    let with_rem = plan.reference == Reference::HartreeFock;
    let Some(noise) = plan.noise else {
        return Ok(PointResult {
            r: problem.r,
            e_exact: oracle.e_min,
            e_exact_ref: oracle.e_ref,
            e_vqe: oracle.e_min,
            e_vqe_readout: oracle.e_min,
            e_vqe_ref: oracle.e_ref,
            e_vqe_ref_readout: oracle.e_ref,
            e_rem: with_rem.then_some(oracle.e_min),
            e_readout_rem: with_rem.then_some(oracle.e_min),
            params_vqe: oracle.params.clone(),
            params_readout: oracle.params.clone(),
            evaluations: 0,
            converged: true,
        });
    };
    let raw_ev = EnergyEvaluator::new(problem.hamiltonian.clone(), ansatz.clone())?
        .with_backend(Backend::Density(noise.clone()))?
        .with_shots(plan.shots)?
        .with_seed(seed);
    let has_readout = noise.readout().is_some() || *plan.mitigation_matrix != ConfusionMatrix::identity(ansatz.n_qubits());

    struct Run {
        e_ref: f64,
        e_min: f64,
        params: Vec<f64>,
    }
    let (raw, unfolded, evaluations, converged) = if plan.optimizer_choice == OptimizerChoice::Sweep {
        let ev = raw_ev.with_readout_mitigation(plan.mitigation_matrix.clone())?;
        let grid = default_grid(DEFAULT_GRID_POINTS);
        let sweep = sweep_and_fit(&ev, &grid)?;
        let mit = sweep.fit_mitigated.expect("mitigation matrix set");
        let raw = Run {
            e_ref: sweep.fit_raw.value_at(theta_ref[0]),
            e_min: sweep.fit_raw.e_min,
            params: vec![sweep.fit_raw.theta_min],
        };
        let unfolded = Run { e_ref: mit.value_at(theta_ref[0]), e_min: mit.e_min, params: vec![mit.theta_min] };
        (raw, unfolded, grid.len(), true)
    } else {
        let out = run_vqe(&raw_ev, theta_ref, &plan.optimizer)?;
        let raw = Run { e_ref: out.trace[0].1, e_min: out.energy, params: out.params.clone() };
        if has_readout {
            let ev = raw_ev.with_readout_mitigation(plan.mitigation_matrix.clone())?;
            let mo = run_vqe(&ev, theta_ref, &plan.optimizer)?;
            let unfolded = Run { e_ref: mo.trace[0].1, e_min: mo.energy, params: mo.params };
            (raw, unfolded, out.evaluations + mo.evaluations, out.converged && mo.converged)
        } else {
            let unfolded = Run { e_ref: raw.e_ref, e_min: raw.e_min, params: raw.params.clone() };
            (raw, unfolded, out.evaluations, out.converged)
        }
    };
    let shifted = |run: &Run| RemReport::new(run.e_ref, oracle.e_ref, run.e_min, Some(oracle.e_min)).e_rem;
    Ok(PointResult {
        r: problem.r,
        e_exact: oracle.e_min,
        e_exact_ref: oracle.e_ref,
        e_vqe: raw.e_min,
        e_vqe_readout: unfolded.e_min,
        e_vqe_ref: raw.e_ref,
        e_vqe_ref_readout: unfolded.e_ref,
        e_rem: with_rem.then(|| shifted(&raw)),
        e_readout_rem: with_rem.then(|| shifted(&unfolded)),
        params_vqe: raw.params,
        params_readout: unfolded.params,
        evaluations,
        converged,
    })
}

/// One row per geometry, each with its own derived seed.
pub fn dissociation(res: &Resolved) -> Result<Vec<PointResult>> {
    let plan = PointPlan::from_resolved(res);
    map_indexed(res.problems.len(), |i| {
        let p = &res.problems[i];
        let o = oracle(&p.hamiltonian, &res.ansatz)?;
        run_point(p, &plan, &o, derive_seed(res.seed, i as u64))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoiseSweepRow {
    pub p2: f64,
    pub point: PointResult,
}

/// Log-spaced two-qubit error rates `1e-4 … 5e-2` plus the device rate.
pub fn default_p2_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..=8).map(|k| 1e-4 * 10f64.powf(k as f64 * (500f64).log10() / 8.0)).collect();
    g.push(super::config::DEVICE_P2);
    g.sort_by(f64::total_cmp);
    g
}

/// The problem a single-geometry command runs on: the only one, or the
/// equilibrium geometry of a built-in dataset.
pub fn single_problem(res: &Resolved) -> Result<&Problem> {
    if res.problems.len() == 1 {
        return Ok(&res.problems[0]);
    }
    let eq = res.equilibrium.ok_or_else(|| Error::Config("no equilibrium geometry; pass --r".into()))?;
    res.problems.iter().find(|p| p.r.is_some_and(|r| (r - eq).abs() < 1e-9)).ok_or(Error::UnknownGeometry(eq))
}

/// Sweeps `p2` with `p1 = 0.1·p2`, keeping the configured readout noise.
/// The noiseless oracle is shared by every row.
pub fn noise_sweep(res: &Resolved, grid: &[f64]) -> Result<Vec<NoiseSweepRow>> {
    if grid.is_empty() {
        return Err(Error::Config("empty p2 grid".into()));
    }
    if let Some(&p) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Config(format!("p2 = {p} is outside [0, 1]")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config("p2 grid must be strictly increasing".into()));
    }
    let problem = single_problem(res)?;
    let o = oracle(&problem.hamiltonian, &res.ansatz)?;
    let readout = res.noise.as_ref().and_then(|n| n.readout()).cloned();
    map_indexed(grid.len(), |k| {
        let p2 = grid[k];
        let mut model = NoiseModel::with_rates(SINGLE_TO_TWO_QUBIT_RATIO * p2, p2)?;
        if let Some(c) = &readout {
            model = model.with_readout(c.clone());
        }
        let plan = PointPlan { noise: Some(&model), ..PointPlan::from_resolved(res) };
        let point = run_point(problem, &plan, &o, derive_seed(res.seed, k as u64))?;
        Ok(NoiseSweepRow { p2, point })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SinglePointReport {
    pub molecule: String,
    pub r: Option<f64>,
    pub ansatz: String,
    pub circuit: CircuitStats,
    pub optimizer: String,
    pub p1: f64,
    pub p2: f64,
    pub shots: Option<u64>,
    pub seed: u64,
    pub mitigation: String,
    pub params: Vec<f64>,
    pub evaluations: usize,
    pub converged: bool,
    /// REM applied to the selected readout treatment; `null` fields when
    /// the run has no reference state.
    pub rem: Option<RemReport>,
    pub point: PointResult,
}

pub fn single_point(res: &Resolved) -> Result<SinglePointReport> {
    let problem = single_problem(res)?;
    let o = oracle(&problem.hamiltonian, &res.ansatz)?;
    let point = run_point(problem, &PointPlan::from_resolved(res), &o, derive_seed(res.seed, 0))?;
    let (e_ref, e_min, params) = point.selected(res.mitigation);
    let rem =
        (res.reference == Reference::HartreeFock).then(|| RemReport::new(e_ref, point.e_exact_ref, e_min, Some(point.e_exact)));
    Ok(SinglePointReport {
        molecule: res.name.clone(),
        r: problem.r,
        ansatz: format!("{:?}", res.ansatz_choice).to_lowercase(),
        circuit: res.ansatz.stats(),
        optimizer: format!("{:?}", res.optimizer_choice).to_lowercase(),
        p1: res.p1,
        p2: res.p2,
        shots: res.shots,
        seed: res.seed,
        mitigation: format!("{:?}", res.mitigation).to_lowercase(),
        params: params.to_vec(),
        evaluations: point.evaluations,
        converged: point.converged,
        rem,
        point,
    })
}

/// Samples the configured readout channel (identity on the ideal
/// backend) and estimates its confusion matrix.
pub fn calibrate(res: &Resolved, shots: u64, repeats: usize) -> Result<ConfusionMatrix> {
    let n = res.ansatz.n_qubits();
    let channel = res.noise.as_ref().and_then(|m| m.readout()).cloned().unwrap_or_else(|| ConfusionMatrix::identity(n));
    calibrate_confusion(&channel, shots, repeats, derive_seed(res.seed, 0xCA1))
}
