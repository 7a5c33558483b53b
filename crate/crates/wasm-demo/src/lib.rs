//! Browser bindings. Every export returns a JSON string; the plain-Rust
//! versions underneath are what the native tests call.

use remsim::chemdata::builtin;
use remsim::experiments::{
    default_p2_grid, dissociation, noise_sweep, oracle, BackendKind, ConfusionSource, Mitigation, NoiseSweepRow, PointResult,
    RunConfig, Source,
};
use remsim::mitigation::ConfusionMatrix;
use remsim::sim::{NoiseModel, SINGLE_TO_TWO_QUBIT_RATIO};
use remsim::vqe::{default_grid, sweep_and_fit, Backend, CosineFit, EnergyEvaluator, DEFAULT_GRID_POINTS};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
pub struct Landscape {
    pub r: f64,
    pub grid: Vec<f64>,
    pub raw: Vec<f64>,
    pub mitigated: Vec<f64>,
    pub fit_raw: CosineFit,
    pub fit_mitigated: CosineFit,
    /// Noiseless curve on a fine grid for drawing.
    pub exact_theta: Vec<f64>,
    pub exact: Vec<f64>,
    pub e_exact_ref: f64,
    pub e_exact_min: f64,
    pub e_rem: f64,
    pub e_readout_rem: f64,
}

fn noisy_config(molecule: &str, p2: f64, shots: u32, seed: u32, readout: bool) -> RunConfig {
    RunConfig {
        source: Source::Builtin(molecule.into()),
        backend: BackendKind::Noisy,
        p2: Some(p2),
        shots: (shots > 0).then_some(shots as u64),
        seed: seed as u64,
        mitigation: if readout { Mitigation::ReadoutRem } else { Mitigation::Rem },
        confusion: if readout { ConfusionSource::FigureS2 } else { ConfusionSource::Ideal },
        ..RunConfig::default()
    }
}

/// Noisy H₂ energy landscape of the one-parameter ansatz at bond length `r`.
/// `shots = 0` uses exact expectations.
pub fn h2_landscape(r: f64, p2: f64, shots: u32, seed: u32, readout: bool) -> Result<Landscape, String> {
    let res = noisy_config("h2", p2, shots, seed, readout).resolve().map_err(|e| e.to_string())?;
    let h = builtin("h2").and_then(|d| d.geometry(r).map(|g| g.hamiltonian.clone())).map_err(|e| e.to_string())?;
    let mut noise = NoiseModel::with_rates(SINGLE_TO_TWO_QUBIT_RATIO * p2, p2).map_err(|e| e.to_string())?;
    if readout {
        noise = noise.with_readout(ConfusionMatrix::figure_s2());
    }
    let ev = EnergyEvaluator::new(h, res.ansatz.clone())
        .and_then(|e| e.with_backend(Backend::Density(noise)))
        .and_then(|e| e.with_shots(res.shots))
        .and_then(|e| e.with_readout_mitigation(res.mitigation_matrix.clone()))
        .map_err(|e| e.to_string())?
        .with_seed(res.seed);
    let grid = default_grid(DEFAULT_GRID_POINTS);
    let sweep = sweep_and_fit(&ev, &grid).map_err(|e| e.to_string())?;
    let fit_mitigated = sweep.fit_mitigated.expect("mitigation matrix set");
    let exact_theta = default_grid(121);
    let exact = exact_theta.iter().map(|t| ev.exact_energy(&[*t])).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let e_exact_ref = ev.exact_energy(&[0.0]).map_err(|e| e.to_string())?;
    let e_exact_min = oracle(ev.hamiltonian(), ev.ansatz()).map_err(|e| e.to_string())?.e_min;
    let rem = |f: &CosineFit| f.e_min - (f.value_at(0.0) - e_exact_ref);
    Ok(Landscape {
        r,
        grid,
        raw: sweep.raw,
        mitigated: sweep.mitigated.unwrap_or_default(),
        e_rem: rem(&sweep.fit_raw),
        e_readout_rem: rem(&fit_mitigated),
        fit_raw: sweep.fit_raw,
        fit_mitigated,
        exact_theta,
        exact,
        e_exact_ref,
        e_exact_min,
    })
}

pub fn dissociation_rows(molecule: &str, p2: f64, shots: u32, seed: u32, readout: bool) -> Result<Vec<PointResult>, String> {
    let res = noisy_config(molecule, p2, shots, seed, readout).resolve().map_err(|e| e.to_string())?;
    dissociation(&res).map_err(|e| e.to_string())
}

pub fn noise_sweep_rows(molecule: &str, shots: u32, seed: u32, readout: bool) -> Result<Vec<NoiseSweepRow>, String> {
    let mut cfg = noisy_config(molecule, 0.0, shots, seed, readout);
    cfg.p2 = None;
    let res = cfg.resolve().map_err(|e| e.to_string())?;
    noise_sweep(&res, &default_p2_grid()).map_err(|e| e.to_string())
}

fn to_js<T: Serialize>(v: Result<T, String>) -> Result<String, JsValue> {
    v.and_then(|x| serde_json::to_string(&x).map_err(|e| e.to_string())).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = h2Landscape)]
pub fn h2_landscape_js(r: f64, p2: f64, shots: u32, seed: u32, readout: bool) -> Result<String, JsValue> {
    to_js(h2_landscape(r, p2, shots, seed, readout))
}

#[wasm_bindgen(js_name = dissociationCurve)]
pub fn dissociation_js(molecule: &str, p2: f64, shots: u32, seed: u32, readout: bool) -> Result<String, JsValue> {
    to_js(dissociation_rows(molecule, p2, shots, seed, readout))
}

#[wasm_bindgen(js_name = noiseSweep)]
pub fn noise_sweep_js(molecule: &str, shots: u32, seed: u32, readout: bool) -> Result<String, JsValue> {
    to_js(noise_sweep_rows(molecule, shots, seed, readout))
}
