use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use super::circuit::{BoundGate, Gate, GateKind};
use super::engine::apply_gates;
use super::state::QuantumState;
use crate::mitigation::ConfusionMatrix;
use crate::pauli::{MeasurementGroup, Pauli, PauliHamiltonian, PauliString};
use crate::rng::{cumulative, draw_cumulative, seeded};
use crate::{Error, Result};

/// Shot histogram indexed by outcome; bit `q` of the index is qubit `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    n_qubits: usize,
    hist: Vec<u64>,
}

impl Counts {
    pub fn zeros(n_qubits: usize) -> Self {
        Counts { n_qubits, hist: vec![0; 1 << n_qubits] }
    }

    pub fn from_map(n_qubits: usize, map: &BTreeMap<String, u64>) -> Result<Self> {
        let mut c = Counts::zeros(n_qubits);
        for (k, &v) in map {
            if k.len() != n_qubits {
                return Err(Error::LengthMismatch { expected: n_qubits, actual: k.len() });
            }
            let idx =
                usize::from_str_radix(k, 2).map_err(|_| Error::InvalidBasis(format!("outcome {k:?} is not a bitstring")))?;
            c.hist[idx] += v;
        }
        Ok(c)
    }

    pub fn from_pairs(n_qubits: usize, pairs: &[(&str, u64)]) -> Result<Self> {
        let map = pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        Self::from_map(n_qubits, &map)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.hist.iter().sum()
    }

    pub fn get(&self, outcome: &str) -> u64 {
        usize::from_str_radix(outcome, 2).ok().and_then(|i| self.hist.get(i).copied()).unwrap_or(0)
    }

    pub fn histogram(&self) -> &[u64] {
        &self.hist
    }

    pub fn to_map(&self) -> BTreeMap<String, u64> {
        self.hist
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(k, &v)| (format!("{:0width$b}", k, width = self.n_qubits), v))
            .collect()
    }

    /// Empirical outcome distribution.
    pub fn distribution(&self) -> Vec<f64> {
        let total = self.shots() as f64;
        self.hist.iter().map(|&v| v as f64 / total).collect()
    }
}

fn basis_change(basis: &PauliString) -> Vec<BoundGate> {
    (0..basis.n_qubits())
        .filter_map(|q| match basis.get(q) {
            Pauli::X => Some(BoundGate::Single { qubit: q, matrix: Gate::matrix(GateKind::H, &[]) }),
            // RX(π/2)† Z RX(π/2) = Y
            Pauli::Y => Some(BoundGate::Single { qubit: q, matrix: Gate::matrix(GateKind::Rx, &[FRAC_PI_2]) }),
            Pauli::Z | Pauli::I => None,
        })
        .collect()
}

/// Exact outcome distribution after rotating each qubit into `basis`
/// (`I` is measured as `Z`).
pub fn basis_distribution(state: &QuantumState, basis: &PauliString) -> Result<Vec<f64>> {
    if basis.n_qubits() != state.n_qubits() {
        return Err(Error::InvalidBasis(format!(
            "basis {basis} has {} qubits, state has {}",
            basis.n_qubits(),
            state.n_qubits()
        )));
    }
    let rotations = basis_change(basis);
    if rotations.is_empty() {
        return Ok(state.probabilities());
    }
    let mut rotated = state.clone();
    apply_gates(&mut rotated, &rotations);
    Ok(rotated.probabilities())
}

/// Draws `shots` i.i.d. outcomes from a distribution.
pub fn sample_distribution(probs: &[f64], n_qubits: usize, shots: u64, seed: u64) -> Result<Counts> {
    if shots == 0 {
        return Err(Error::Config("shots must be positive".into()));
    }
    let cdf = cumulative(probs);
    let mut rng = seeded(seed);
    let mut counts = Counts::zeros(n_qubits);
    for _ in 0..shots {
        counts.hist[draw_cumulative(&mut rng, &cdf)] += 1;
    }
    Ok(counts)
}

/// Measures `state` in `basis` with `shots` seeded samples.
pub fn sample_counts(state: &QuantumState, basis: &PauliString, shots: u64, seed: u64) -> Result<Counts> {
    let probs = basis_distribution(state, basis)?;
    sample_distribution(&probs, state.n_qubits(), shots, seed)
}

/// Resamples every shot with prepared outcome `i` to `j` with probability `C[j|i]`.
pub fn apply_readout_noise(counts: &Counts, confusion: &ConfusionMatrix, seed: u64) -> Result<Counts> {
    if confusion.n_qubits() != counts.n_qubits {
        return Err(Error::DimensionMismatch { expected: 1 << counts.n_qubits, actual: confusion.dim() });
    }
    let mut rng = seeded(seed);
    let mut out = Counts::zeros(counts.n_qubits);
    for (i, &c) in counts.hist.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let cdf = cumulative(&confusion.column(i));
        for _ in 0..c {
            out.hist[draw_cumulative(&mut rng, &cdf)] += 1;
        }
    }
    Ok(out)
}

/// `Σ cᵢ · E[eigenvalue of Pᵢ]` over a group's members for an outcome distribution
/// measured in the group's basis. The offset is not included.
pub fn expectation_from_distribution(probs: &[f64], group: &MeasurementGroup, h: &PauliHamiltonian) -> Result<f64> {
    if probs.len() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), actual: probs.len() });
    }
    let mut acc = 0.0;
    for &m in &group.members {
        let (p, c) = h.terms().get(m).ok_or_else(|| Error::Config(format!("term index {m} out of range")))?;
        if !p.qubit_wise_compatible(&group.basis) {
            return Err(Error::IncompatibleTerm { term: p.label(), basis: group.basis.label() });
        }
        let support = p.support() as usize;
        let mean: f64 =
            probs.iter().enumerate().map(|(k, &pk)| if (k & support).count_ones().is_multiple_of(2) { pk } else { -pk }).sum();
        acc += c * mean;
    }
    Ok(acc)
}

pub fn expectation_from_counts(counts: &Counts, group: &MeasurementGroup, h: &PauliHamiltonian) -> Result<f64> {
    expectation_from_distribution(&counts.distribution(), group, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{group_terms, parse_pauli};
    use crate::sim::{run_statevector, Circuit};

    #[test]
    fn deterministic_outcomes() {
        let c = sample_counts(&QuantumState::zero(2), &parse_pauli("ZZ", 2).unwrap(), 100, 1).unwrap();
        assert_eq!(c.get("00"), 100);
        assert_eq!(c.to_map().len(), 1);
        let mut plus = Circuit::new(1);
        plus.push(Gate::h(0)).unwrap();
        let s = run_statevector(&plus, &[]).unwrap();
        let c = sample_counts(&s, &parse_pauli("X", 1).unwrap(), 777, 3).unwrap();
        assert_eq!(c.get("0"), 777);
    }

    #[test]
    fn y_basis_rotation() {
        // |+i⟩ = S H |0⟩ = RX(-π/2)|0⟩ has ⟨Y⟩ = +1
        let mut c = Circuit::new(1);
        c.push(Gate::rx(0, -FRAC_PI_2)).unwrap();
        let s = run_statevector(&c, &[]).unwrap();
        let p = basis_distribution(&s, &parse_pauli("Y", 1).unwrap()).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-14);
        let rho = s.to_density();
        let p = basis_distribution(&rho, &parse_pauli("Y", 1).unwrap()).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_shots_rejected() {
        assert!(sample_counts(&QuantumState::zero(1), &parse_pauli("Z", 1).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn counts_expectations() {
        let h = PauliHamiltonian::from_labels(2, &[("ZZ", 1.0)], 0.0).unwrap();
        let g = &group_terms(&h)[0];
        let c = Counts::from_pairs(2, &[("00", 100)]).unwrap();
        assert_eq!(expectation_from_counts(&c, g, &h).unwrap(), 1.0);
        let c = Counts::from_pairs(2, &[("01", 50), ("10", 50)]).unwrap();
        assert_eq!(expectation_from_counts(&c, g, &h).unwrap(), -1.0);
    }

    #[test]
    fn incompatible_term_rejected() {
        let h = PauliHamiltonian::from_labels(2, &[("XX", 1.0)], 0.0).unwrap();
        let g = MeasurementGroup { basis: parse_pauli("ZZ", 2).unwrap(), members: vec![0] };
        let c = Counts::from_pairs(2, &[("00", 10)]).unwrap();
        assert!(matches!(expectation_from_counts(&c, &g, &h), Err(Error::IncompatibleTerm { .. })));
    }

    #[test]
    fn h2_z_group_on_hartree_fock() {
        let h = PauliHamiltonian::from_labels(
            2,
            &[("II", -1.054), ("IZ", 0.394), ("ZI", -0.394), ("ZZ", -0.011), ("XX", 0.181)],
            0.7138,
        )
        .unwrap();
        let groups = group_terms(&h);
        let probs = basis_distribution(&QuantumState::basis(2, 0b01), &groups[0].basis).unwrap();
        let z_part = expectation_from_distribution(&probs, &groups[0], &h).unwrap();
        // IZ·(-1) + ZI·(+1) + ZZ·(-1), plus the identity coefficient
        assert!((z_part - (-1.054 - 0.394 - 0.394 + 0.011)).abs() < 1e-12);
        assert!(((z_part + 1.054) - (-0.777)).abs() < 1e-12);
    }

    #[test]
    fn readout_identity_and_uniform() {
        let c = Counts::from_pairs(2, &[("00", 300), ("11", 700)]).unwrap();
        let same = apply_readout_noise(&c, &ConfusionMatrix::identity(2), 5).unwrap();
        assert_eq!(same, c);
        let uni =
            apply_readout_noise(&Counts::from_pairs(2, &[("10", 40_000)]).unwrap(), &ConfusionMatrix::uniform(2), 9).unwrap();
        for k in 0..4 {
            assert!((uni.histogram()[k] as f64 / 40_000.0 - 0.25).abs() < 0.01);
        }
        assert!(apply_readout_noise(&c, &ConfusionMatrix::identity(3), 0).is_err());
    }
}
