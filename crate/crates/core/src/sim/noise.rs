//! Gate-attached depolarizing noise.
//!
//! `p1` and `p2` are total non-identity error probabilities: after a
//! single-qubit gate each of X, Y, Z is applied with probability `p1 / 3`,
//! after a two-qubit gate each of the 15 non-identity Pauli pairs with
//! probability `p2 / 15`.

use num_complex::Complex64;

use crate::mitigation::ConfusionMatrix;
use crate::{Error, Result};

/// Ratio between single- and two-qubit error rates used when `p1` is not given.
pub const SINGLE_TO_TWO_QUBIT_RATIO: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseModel {
    p1: f64,
    p2: f64,
    readout: Option<ConfusionMatrix>,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        NoiseModel { p1: 0.0, p2: 0.0, readout: None }
    }

    /// Two-qubit error `p2` with `p1 = 0.1 · p2`.
    pub fn depolarizing(p2: f64) -> Result<Self> {
        Self::with_rates(SINGLE_TO_TWO_QUBIT_RATIO * p2, p2)
    }

    pub fn with_rates(p1: f64, p2: f64) -> Result<Self> {
        for (name, p) in [("p1", p1), ("p2", p2)] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::InvalidProbability(format!("{name} = {p} outside [0, 1]")));
            }
        }
        Ok(NoiseModel { p1, p2, readout: None })
    }

    pub fn with_readout(mut self, confusion: ConfusionMatrix) -> Self {
        self.readout = Some(confusion);
        self
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn readout(&self) -> Option<&ConfusionMatrix> {
        self.readout.as_ref()
    }

    pub fn is_gate_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }
}

/// Applies a `k`-qubit depolarizing channel with total Pauli-error
/// probability `p` to a row-major density matrix.
///
/// Uses the twirl identity `Σ_{P ≠ I} PρP = 4^k·(Tr_S ρ ⊗ I/2^k) − ρ`,
/// so the channel is `(1 − λ)ρ + λ·Tr_S ρ ⊗ I/2^k` with `λ = 4^k p / (4^k − 1)`.
pub fn depolarize(data: &mut [Complex64], dim: usize, qubits: &[usize], p: f64) {
    if p == 0.0 {
        return;
    }
    let k = qubits.len();
    let sub = 1usize << k;
    let lambda = (sub * sub) as f64 * p / ((sub * sub) as f64 - 1.0);
    let keep = 1.0 - lambda;
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let spread =
        |s: usize| -> usize { qubits.iter().enumerate().filter(|(i, _)| (s >> i) & 1 == 1).map(|(_, &q)| 1usize << q).sum() };
    let offsets: Vec<usize> = (0..sub).map(spread).collect();
    for a in (0..dim).filter(|a| a & mask == 0) {
        for b in (0..dim).filter(|b| b & mask == 0) {
            let mut trace = Complex64::new(0.0, 0.0);
            for &o in &offsets {
                trace += data[(a | o) * dim + (b | o)];
            }
            for &oa in &offsets {
                for &ob in &offsets {
                    data[(a | oa) * dim + (b | ob)] *= keep;
                }
            }
            let share = trace * (lambda / sub as f64);
            for &o in &offsets {
                data[(a | o) * dim + (b | o)] += share;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{parse_pauli, PauliString};
    use crate::sim::QuantumState;

    /// Explicit Kraus sum over Pauli strings on the given qubits.
    fn explicit_channel(data: &[Complex64], dim: usize, n: usize, qubits: &[usize], p: f64) -> Vec<Complex64> {
        let letters = ['I', 'X', 'Y', 'Z'];
        let k = qubits.len();
        let count = 4usize.pow(k as u32) - 1;
        let mut out: Vec<Complex64> = data.iter().map(|z| z * (1.0 - p)).collect();
        for code in 1..=count {
            let mut label = vec!['I'; n];
            for (i, &q) in qubits.iter().enumerate() {
                label[n - 1 - q] = letters[(code >> (2 * i)) & 3];
            }
            let pstr: PauliString = parse_pauli(&label.iter().collect::<String>(), n).unwrap();
            let x = pstr.x_mask() as usize;
            for r in 0..dim {
                for c in 0..dim {
                    // (P ρ P)[r][c] = φ(r⊕x) ρ[r⊕x][c⊕x] conj(φ(c⊕x))
                    let v = pstr.phase_on(r ^ x) * data[(r ^ x) * dim + (c ^ x)] * pstr.phase_on(c ^ x).conj();
                    out[r * dim + c] += v * (p / count as f64);
                }
            }
        }
        out
    }

    fn random_density(n: usize, seed: u64) -> Vec<Complex64> {
        use rand::Rng;
        let mut rng = crate::rng::seeded(seed);
        let d = 1 << n;
        let a: Vec<Complex64> =
            (0..d * d).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        // ρ = A A† / Tr
        let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                rho[r * d + c] = (0..d).map(|k| a[r * d + k] * a[c * d + k].conj()).sum();
            }
        }
        let tr: f64 = (0..d).map(|k| rho[k * d + k].re).sum();
        rho.iter().map(|z| z / tr).collect()
    }

    #[test]
    fn closed_form_matches_kraus_sum() {
        let n = 3;
        let dim = 8;
        for (qubits, p) in [(vec![1usize], 0.07), (vec![0, 2], 0.13), (vec![2, 1], 0.9)] {
            let rho = random_density(n, 11);
            let want = explicit_channel(&rho, dim, n, &qubits, p);
            let mut got = rho.clone();
            depolarize(&mut got, dim, &qubits, p);
            let err = got.iter().zip(&want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-13, "qubits {qubits:?}: {err}");
        }
    }

    #[test]
    fn fully_depolarizing_point_gives_maximally_mixed_qubit() {
        // With total probability p1 = 3/4 each Pauli has weight 1/4, i.e. the
        // uniform twirl.
        let state = QuantumState::basis(2, 0b10).to_density();
        let QuantumState::Mixed { dim, mut data } = state else { unreachable!() };
        depolarize(&mut data, dim, &[1], 0.75);
        let red = QuantumState::Mixed { dim, data }.reduced_qubit(1);
        assert!((red[0][0].re - 0.5).abs() < 1e-15 && (red[1][1].re - 0.5).abs() < 1e-15);
        assert!(red[0][1].norm() < 1e-15);
    }

    #[test]
    fn unit_probability_is_the_three_pauli_average() {
        // p1 = 1: ρ → (XρX + YρY + ZρZ)/3; on |0⟩ this is diag(1/3, 2/3).
        let state = QuantumState::basis(1, 0).to_density();
        let QuantumState::Mixed { dim, mut data } = state else { unreachable!() };
        depolarize(&mut data, dim, &[0], 1.0);
        assert!((data[0].re - 1.0 / 3.0).abs() < 1e-15);
        assert!((data[3].re - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rates_validated() {
        assert!(NoiseModel::with_rates(-0.1, 0.0).is_err());
        assert!(NoiseModel::with_rates(0.0, 1.5).is_err());
        let m = NoiseModel::depolarizing(0.018).unwrap();
        assert!((m.p1() - 0.0018).abs() < 1e-18);
    }
}
