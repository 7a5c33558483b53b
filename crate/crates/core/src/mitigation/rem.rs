use serde::Serialize;

/// Energy shift of the reference state: measured minus exact.
pub fn rem_delta(e_vqe_ref: f64, e_exact_ref: f64) -> f64 {
    e_vqe_ref - e_exact_ref
}

pub fn rem_apply(e_vqe: f64, delta: f64) -> f64 {
    e_vqe - delta
}

/// Shifts every point of an energy curve by `-delta`.
pub fn rem_apply_curve(curve: &[f64], delta: f64) -> Vec<f64> {
    curve.iter().map(|&e| rem_apply(e, delta)).collect()
}

/// `(err_vqe, err_rem)` with `err_rem = (e_vqe_min − delta) − e_exact_min`.
///
/// Corrected energies are never clamped to the variational bound, so
/// `err_rem` can be negative.
pub fn error_metrics(e_vqe_min: f64, e_exact_min: f64, delta: f64) -> (f64, f64) {
    (e_vqe_min - e_exact_min, rem_apply(e_vqe_min, delta) - e_exact_min)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RemReport {
    pub e_vqe_ref: f64,
    pub e_exact_ref: f64,
    pub delta_rem: f64,
    pub e_vqe_min: f64,
    pub e_rem: f64,
    pub e_exact_min: Option<f64>,
    pub err_vqe: Option<f64>,
    pub err_rem: Option<f64>,
}

impl RemReport {
    pub fn new(e_vqe_ref: f64, e_exact_ref: f64, e_vqe_min: f64, e_exact_min: Option<f64>) -> Self {
        let delta_rem = rem_delta(e_vqe_ref, e_exact_ref);
        let e_rem = rem_apply(e_vqe_min, delta_rem);
        let errs = e_exact_min.map(|e| error_metrics(e_vqe_min, e, delta_rem));
        RemReport {
            e_vqe_ref,
            e_exact_ref,
            delta_rem,
            e_vqe_min,
            e_rem,
            e_exact_min,
            err_vqe: errs.map(|e| e.0),
            err_rem: errs.map(|e| e.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_equilibrium_row() {
        assert!((rem_delta(-1.0897, -1.1167) - 0.0270).abs() < 1e-12);
        assert!((rem_apply(-1.1085, 0.0270) - -1.1355).abs() < 1e-12);
        let (ev, er) = error_metrics(-1.1085, -1.1373, 0.0270);
        assert!((ev - 0.0288).abs() < 1e-12);
        assert!((er - 0.0018).abs() < 1e-12);
    }

    #[test]
    fn lih_row() {
        let d = rem_delta(-7.6071, -7.8620);
        assert!((d - 0.2549).abs() < 1e-12);
        assert!((rem_apply(-7.6102, d) - -7.8651).abs() < 1e-12);
    }

    #[test]
    fn report_without_exact_minimum() {
        let r = RemReport::new(-1.0, -1.1, -1.05, None);
        assert_eq!(r.err_vqe, None);
        assert_eq!(r.e_rem, -1.05 - r.delta_rem);
        assert_eq!(rem_delta(0.3, 0.3), 0.0);
        assert_eq!(rem_apply_curve(&[1.0, 2.0], 0.0), vec![1.0, 2.0]);
    }
}
