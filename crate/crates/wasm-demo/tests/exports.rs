use remsim_wasm_demo::{dissociation_rows, h2_landscape, noise_sweep_rows};

#[test]
fn landscape_fit_tracks_exact_curve() {
    let l = h2_landscape(0.7414, 0.0, 0, 1, false).unwrap();
    assert_eq!(l.grid.len(), l.raw.len());
    assert!((l.fit_raw.e_min - l.e_exact_min).abs() < 1e-9);
    assert!((l.e_rem - l.e_exact_min).abs() < 1e-9);
    let noisy = h2_landscape(0.7414, 0.018, 2000, 1, true).unwrap();
    assert!((noisy.e_readout_rem - noisy.e_exact_min).abs() < (noisy.fit_raw.e_min - noisy.e_exact_min).abs());
}

#[test]
fn curves_have_one_row_per_point() {
    assert_eq!(dissociation_rows("h2", 0.01, 0, 0, true).unwrap().len(), 12);
    assert_eq!(noise_sweep_rows("h2", 0, 0, false).unwrap().len(), 10);
    assert!(dissociation_rows("beh2", 0.01, 0, 0, true).is_err());
}

#[test]
fn json_is_deterministic() {
    let a = serde_json::to_string(&h2_landscape(1.0, 0.02, 1000, 7, true).unwrap()).unwrap();
    let b = serde_json::to_string(&h2_landscape(1.0, 0.02, 1000, 7, true).unwrap()).unwrap();
    assert_eq!(a, b);
}
