use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::{Error, Result};

/// `E(θ) = c + a·cos(θ − alpha)` with `a ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CosineFit {
    pub c: f64,
    pub a: f64,
    pub alpha: f64,
    pub theta_min: f64,
    pub e_min: f64,
    /// Root-mean-square residual over the fitted points.
    pub rms_residual: f64,
}

impl CosineFit {
    pub fn value_at(&self, theta: f64) -> f64 {
        self.c + self.a * (theta - self.alpha).cos()
    }
}

fn wrap(theta: f64) -> f64 {
    let t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t <= -PI {
        t + 2.0 * PI
    } else {
        t
    }
}

/// Linear least squares on `{1, cos θ, sin θ}`.
pub fn fit_cosine(thetas: &[f64], energies: &[f64]) -> Result<CosineFit> {
    if thetas.len() != energies.len() {
        return Err(Error::LengthMismatch { expected: thetas.len(), actual: energies.len() });
    }
    let mut points: Vec<(f64, f64)> = thetas.iter().map(|t| (t.cos(), t.sin())).collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    points.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    if points.len() < 3 {
        return Err(Error::DegenerateGrid(format!("{} distinct angles, need 3", points.len())));
    }
    let m = thetas.len();
    let design = DMatrix::from_fn(m, 3, |i, j| match j {
        0 => 1.0,
        1 => thetas[i].cos(),
        _ => thetas[i].sin(),
    });
    let y = DVector::from_column_slice(energies);
    let coef = design.clone().svd(true, true).solve(&y, 1e-14).map_err(|e| Error::DegenerateGrid(e.to_string()))?;
    let (c, p, q) = (coef[0], coef[1], coef[2]);
    let a = p.hypot(q);
    let alpha = q.atan2(p);
    let resid = &design * &coef - y;
    Ok(CosineFit {
        c,
        a,
        alpha,
        theta_min: wrap(alpha + PI),
        e_min: c - a,
        rms_residual: (resid.norm_squared() / m as f64).sqrt(),
    })
}

/// `n` evenly spaced angles covering `[−π, π]` inclusive.
pub fn default_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| -PI + 2.0 * PI * i as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_synthetic_curve() {
        let grid = default_grid(9);
        let e: Vec<f64> = grid.iter().map(|t| 2.0 + 0.5 * (t - 0.3).cos()).collect();
        let f = fit_cosine(&grid, &e).unwrap();
        assert!((f.c - 2.0).abs() < 1e-10 && (f.a - 0.5).abs() < 1e-10 && (f.alpha - 0.3).abs() < 1e-10);
        assert!((f.theta_min - (0.3 - PI)).abs() < 1e-10);
        assert!((f.e_min - 1.5).abs() < 1e-10);
        assert!(f.rms_residual < 1e-12);
    }

    #[test]
    fn degenerate_grids_rejected() {
        assert!(fit_cosine(&[0.0, 1.0], &[1.0, 2.0]).is_err());
        // −π and π are the same angle
        assert!(fit_cosine(&[-PI, PI, 0.0, 0.0], &[1.0; 4]).is_err());
        assert!(fit_cosine(&[0.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).is_ok());
    }
}
