use nalgebra::{DMatrix, DVector};

use super::ConfusionMatrix;
use crate::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-9;
const STEP_TOL: f64 = 1e-14;
const MULTIPLIER_TOL: f64 = 1e-12;

/// Least-squares unfolding onto the probability simplex:
/// `argmin ‖C x − m‖²` subject to `Σ x = 1`, `x ≥ 0`.
///
/// Primal active-set method started from the uniform distribution. Each
/// iteration solves the equality-constrained subproblem on the free
/// coordinates through an SVD, so singular confusion matrices are fine.
pub fn unfold(c: &ConfusionMatrix, m: &[f64]) -> Result<Vec<f64>> {
    let d = c.dim();
    if m.len() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: m.len() });
    }
    let total: f64 = m.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL || m.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidProbability(format!("measured distribution sums to {total}")));
    }
    let cm = DMatrix::from_row_slice(d, d, c.entries());
    let gram = cm.transpose() * &cm;
    let rhs = cm.transpose() * DVector::from_column_slice(m);

    let mut x = DVector::from_element(d, 1.0 / d as f64);
    let mut active = vec![false; d];
    for _ in 0..(100 * d + 100) {
        let grad = &gram * &x - &rhs;
        let free: Vec<usize> = (0..d).filter(|&i| !active[i]).collect();
        let (p, nu) = subproblem(&gram, &grad, &free);
        let step_norm = p.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if step_norm <= STEP_TOL {
            // bound multipliers μᵢ = gᵢ + ν on the active set
            let worst = (0..d).filter(|&i| active[i]).map(|i| (i, grad[i] + nu)).min_by(|a, b| a.1.total_cmp(&b.1));
            match worst {
                Some((i, mu)) if mu < -MULTIPLIER_TOL => active[i] = false,
                _ => break,
            }
            continue;
        }
        let mut alpha = 1.0;
        let mut blocking = None;
        for (k, &i) in free.iter().enumerate() {
            if p[k] < 0.0 {
                let a = -x[i] / p[k];
                if a < alpha {
                    alpha = a;
                    blocking = Some(i);
                }
            }
        }
        for (k, &i) in free.iter().enumerate() {
            x[i] += alpha * p[k];
        }
        if let Some(i) = blocking {
            x[i] = 0.0;
            active[i] = true;
        }
    }
    let mut out: Vec<f64> = x.iter().map(|&v| v.max(0.0)).collect();
    let s: f64 = out.iter().sum();
    out.iter_mut().for_each(|v| *v /= s);
    Ok(out)
}

/// Solves `[G_FF 1; 1ᵀ 0][p; ν] = [−g_F; 0]`.
fn subproblem(gram: &DMatrix<f64>, grad: &DVector<f64>, free: &[usize]) -> (Vec<f64>, f64) {
    let k = free.len();
    if k == 0 {
        return (Vec::new(), 0.0);
    }
    let mut kkt = DMatrix::zeros(k + 1, k + 1);
    let mut b = DVector::zeros(k + 1);
    for (r, &i) in free.iter().enumerate() {
        for (s, &j) in free.iter().enumerate() {
            kkt[(r, s)] = gram[(i, j)];
        }
        kkt[(r, k)] = 1.0;
        kkt[(k, r)] = 1.0;
        b[r] = -grad[i];
    }
    let scale = kkt.amax().max(1.0);
    let sol = kkt.svd(true, true).solve(&b, 1e-13 * scale).expect("SVD computed with both factors");
    (sol.rows(0, k).iter().copied().collect(), sol[k])
}

/// Largest violation of the first-order optimality conditions of the
/// unfolding problem at `x`.
pub fn kkt_residual(c: &ConfusionMatrix, m: &[f64], x: &[f64]) -> f64 {
    let d = c.dim();
    let cm = DMatrix::from_row_slice(d, d, c.entries());
    let xv = DVector::from_column_slice(x);
    let grad = cm.transpose() * (&cm * &xv - DVector::from_column_slice(m));
    let support: Vec<usize> = (0..d).filter(|&i| x[i] > 1e-12).collect();
    let lambda = if support.is_empty() { 0.0 } else { -support.iter().map(|&i| grad[i]).sum::<f64>() / support.len() as f64 };
    let mut r = (x.iter().sum::<f64>() - 1.0).abs();
    for i in 0..d {
        r = r.max(-x[i]);
        let mu = grad[i] + lambda;
        r = r.max(if support.contains(&i) { mu.abs() } else { (-mu).max(0.0) });
    }
    r
}
