use serde::Serialize;

use crate::rng::seeded;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct NelderMeadConfig {
    pub initial_step: f64,
    /// Stop when the simplex energy spread is below `ftol` ...
    pub ftol: f64,
    /// ... and every vertex lies within `xtol` of the best one.
    pub xtol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        NelderMeadConfig { initial_step: 0.1, ftol: 1e-6, xtol: 1e-4, max_evals: 2000 }
    }
}

/// First-order SPSA with the standard gain sequences
/// `a_k = a / (k + 1 + A)^α`, `c_k = c / (k + 1)^γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpsaConfig {
    /// `None` calibrates `a` so the first step has length `target_step`.
    pub a: Option<f64>,
    pub target_step: f64,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub stability: f64,
    pub max_evals: usize,
    pub seed: u64,
}

impl Default for SpsaConfig {
    fn default() -> Self {
        SpsaConfig { a: None, target_step: 0.2, c: 0.1, alpha: 0.602, gamma: 0.101, stability: 20.0, max_evals: 2000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Optimizer {
    NelderMead(NelderMeadConfig),
    Spsa(SpsaConfig),
}

impl Default for Optimizer {
    fn default() -> Self {
        Optimizer::NelderMead(NelderMeadConfig::default())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VqeOutcome {
    pub params: Vec<f64>,
    pub energy: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Every evaluated point in order.
    pub trace: Vec<(Vec<f64>, f64)>,
}

struct Recorder<'a> {
    f: &'a mut dyn FnMut(&[f64], u64) -> Result<f64>,
    trace: Vec<(Vec<f64>, f64)>,
}

impl Recorder<'_> {
    fn call(&mut self, x: &[f64]) -> Result<f64> {
        let v = (self.f)(x, self.trace.len() as u64)?;
        self.trace.push((x.to_vec(), v));
        Ok(v)
    }
}

/// Minimizes `f(x, evaluation_index)`; the index lets stochastic
/// objectives draw an independent stream per call. The first evaluation
/// is always at `x0`.
pub fn minimize(f: &mut dyn FnMut(&[f64], u64) -> Result<f64>, x0: &[f64], optimizer: &Optimizer) -> Result<VqeOutcome> {
    let mut rec = Recorder { f, trace: Vec::new() };
    let converged = match optimizer {
        Optimizer::NelderMead(cfg) => nelder_mead(&mut rec, x0, cfg)?,
        Optimizer::Spsa(cfg) => spsa(&mut rec, x0, cfg)?,
    };
    let trace = rec.trace;
    let (params, energy) = match optimizer {
        Optimizer::NelderMead(_) => {
            trace.iter().min_by(|a, b| a.1.total_cmp(&b.1)).map(|(x, v)| (x.clone(), *v)).expect("at least one evaluation")
        }
        // noisy iterates: report the final point's own evaluation
        Optimizer::Spsa(_) => trace.last().map(|(x, v)| (x.clone(), *v)).expect("at least one evaluation"),
    };
    Ok(VqeOutcome { params, energy, evaluations: trace.len(), converged, trace })
}

fn nelder_mead(rec: &mut Recorder, x0: &[f64], cfg: &NelderMeadConfig) -> Result<bool> {
    let n = x0.len();
    if n == 0 {
        rec.call(x0)?;
        return Ok(true);
    }
    // adaptive coefficients (Gao & Han) keep high-dimensional runs from stalling
    let nf = n as f64;
    let (rho, chi, psi, sigma) = (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), rec.call(x0)?));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += cfg.initial_step;
        let v = rec.call(&x)?;
        simplex.push((x, v));
    }
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size =
            simplex[1..].iter().flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs())).fold(0.0f64, f64::max);
        if spread <= cfg.ftol && size <= cfg.xtol {
            return Ok(true);
        }
        if rec.trace.len() >= cfg.max_evals {
            return Ok(false);
        }
        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / nf).collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };
        let xr = along(rho);
        let fr = rec.call(&xr)?;
        if fr < simplex[0].1 {
            let xe = along(rho * chi);
            let fe = rec.call(&xe)?;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(rho * psi);
            let fc = rec.call(&xc)?;
            (xc, fc)
        } else {
            let xc = along(-psi);
            let fc = rec.call(&xc)?;
            (xc, fc)
        };
        if fc < fr.min(worst.1) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for v in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best.iter().zip(&v.0).map(|(b, x)| b + sigma * (x - b)).collect();
            let fx = rec.call(&x)?;
            *v = (x, fx);
        }
    }
}

fn spsa(rec: &mut Recorder, x0: &[f64], cfg: &SpsaConfig) -> Result<bool> {
    use rand::Rng;
    let n = x0.len();
    let mut rng = seeded(cfg.seed);
    let delta = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
        (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
    };
    // trace[0] is always x0
    rec.call(x0)?;
    let mut x = x0.to_vec();
    let perturbed = |x: &[f64], d: &[f64], s: f64| -> Vec<f64> { x.iter().zip(d).map(|(a, b)| a + s * b).collect() };

    let a = match cfg.a {
        Some(a) => a,
        None => {
            // average |gradient estimate| over a few probes at x0
            let probes = 5;
            let mut mag = 0.0;
            for _ in 0..probes {
                let d = delta(&mut rng);
                let fp = rec.call(&perturbed(&x, &d, cfg.c))?;
                let fm = rec.call(&perturbed(&x, &d, -cfg.c))?;
                mag += ((fp - fm) / (2.0 * cfg.c)).abs();
            }
            mag /= probes as f64;
            if mag > 0.0 {
                cfg.target_step * (1.0 + cfg.stability).powf(cfg.alpha) / mag
            } else {
                cfg.target_step
            }
        }
    };
    let mut k = 0usize;
    while rec.trace.len() + 3 <= cfg.max_evals {
        let ak = a / (k as f64 + 1.0 + cfg.stability).powf(cfg.alpha);
        let ck = cfg.c / (k as f64 + 1.0).powf(cfg.gamma);
        let d = delta(&mut rng);
        let fp = rec.call(&perturbed(&x, &d, ck))?;
        let fm = rec.call(&perturbed(&x, &d, -ck))?;
        let g = (fp - fm) / (2.0 * ck);
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi -= ak * g * di;
        }
        k += 1;
    }
    rec.call(&x)?;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowl(x: &[f64], _: u64) -> Result<f64> {
        Ok(1.5 + (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 0.7).powi(2) + 0.5 * (x[2] - 1.1).powi(2))
    }

    #[test]
    fn nelder_mead_quadratic_bowl() {
        let cfg = NelderMeadConfig { xtol: 1e-8, ftol: 1e-12, max_evals: 5000, ..Default::default() };
        let out = minimize(&mut bowl, &[0.0; 3], &Optimizer::NelderMead(cfg)).unwrap();
        assert!(out.converged);
        assert!((out.energy - 1.5).abs() < 1e-6);
        for (x, want) in out.params.iter().zip([0.3, -0.7, 1.1]) {
            assert!((x - want).abs() < 1e-6);
        }
        let min_trace = out.trace.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
        assert_eq!(out.energy, min_trace);
    }

    #[test]
    fn nelder_mead_default_tolerances() {
        let out = minimize(&mut bowl, &[0.0; 3], &Optimizer::default()).unwrap();
        assert!(out.converged && (out.energy - 1.5).abs() < 1e-6);
        assert!(out.evaluations <= 2000);
    }

    #[test]
    fn evaluation_cap_reported() {
        let cfg = NelderMeadConfig { max_evals: 10, ..Default::default() };
        let out = minimize(&mut bowl, &[5.0; 3], &Optimizer::NelderMead(cfg)).unwrap();
        assert!(!out.converged);
    }

    #[test]
    fn spsa_reaches_bowl_minimum_and_is_deterministic() {
        let opt = Optimizer::Spsa(SpsaConfig { seed: 4, ..Default::default() });
        let a = minimize(&mut bowl, &[0.0; 3], &opt).unwrap();
        assert!((a.energy - 1.5).abs() < 1e-3, "{}", a.energy);
        let b = minimize(&mut bowl, &[0.0; 3], &opt).unwrap();
        assert_eq!(a, b);
    }
}
