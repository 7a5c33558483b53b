//! Parameterized state-preparation circuits: the one-parameter H₂ circuit,
//! parity-mapped UCCSD and a layered hardware-efficient ansatz.

mod fermion;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

pub use fermion::{excitation_generator, hf_parity_bitstring, uccsd_excitations, Excitation};

use crate::pauli::{Pauli, PauliString};
use crate::sim::{Angle, Circuit, Gate};
use crate::{Error, Result};

/// T-shaped four-qubit coupling map.
pub const T_MAP: [(usize, usize); 3] = [(0, 1), (1, 2), (1, 3)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AnsatzFamily {
    H2Compact,
    Uccsd,
    HardwareEfficient,
}

/// A parameterized circuit plus the parameter vector that prepares the
/// Hartree-Fock reference.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz {
    family: AnsatzFamily,
    circuit: Circuit,
    hf_bitstring: String,
    reference_params: Vec<f64>,
}

impl Ansatz {
    pub fn family(&self) -> &AnsatzFamily {
        &self.family
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn n_qubits(&self) -> usize {
        self.circuit.n_qubits()
    }

    pub fn n_params(&self) -> usize {
        self.circuit.n_params()
    }

    pub fn hf_bitstring(&self) -> &str {
        &self.hf_bitstring
    }

    /// Parameters at which the circuit prepares the Hartree-Fock state.
    pub fn reference_params(&self) -> &[f64] {
        &self.reference_params
    }

    pub fn stats(&self) -> CircuitStats {
        circuit_stats(&self.circuit)
    }
}

fn bits_of(label: &str) -> Result<usize> {
    if label.is_empty() || !label.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::InvalidBasis(format!("{label:?} is not a bitstring")));
    }
    Ok(usize::from_str_radix(label, 2).expect("checked binary digits"))
}

/// X gates preparing `|bits⟩` (leftmost character = highest qubit).
pub fn hartree_fock_circuit(bits: &str) -> Result<Circuit> {
    let n = bits.len();
    let k = bits_of(bits)?;
    let mut c = Circuit::new(n);
    for q in (0..n).filter(|q| (k >> q) & 1 == 1) {
        c.push(Gate::x(q))?;
    }
    Ok(c)
}

/// One-parameter two-qubit circuit preparing
/// `cos(θ/2)|01⟩ − sin(θ/2)|10⟩` with a single CNOT.
pub fn h2_compact() -> Ansatz {
    let mut c = Circuit::new(2);
    let t = c.add_param("theta");
    c.push(Gate::x(0)).expect("valid");
    c.push(Gate::ry(1, Angle::Param { index: t, scale: -1.0 })).expect("valid");
    c.push(Gate::cnot(1, 0)).expect("valid");
    Ansatz { family: AnsatzFamily::H2Compact, circuit: c, hf_bitstring: "01".into(), reference_params: vec![0.0] }
}

/// The compact circuit with `θ` fixed.
pub fn h2_compact_circuit(theta: f64) -> Circuit {
    h2_compact().circuit.bound_copy(&[theta]).expect("one parameter")
}

/// Appends `exp(i·scale·θ·P)` as basis change, CNOT ladder, RZ, unwind.
fn append_pauli_rotation(c: &mut Circuit, p: &PauliString, angle: Angle) -> Result<()> {
    let support: Vec<usize> = (0..p.n_qubits()).filter(|&q| p.get(q) != Pauli::I).collect();
    let Some(&last) = support.last() else {
        return Ok(()); // global phase
    };
    for &q in &support {
        match p.get(q) {
            Pauli::X => {
                c.push(Gate::h(q))?;
            }
            Pauli::Y => {
                c.push(Gate::rx(q, FRAC_PI_2))?;
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        c.push(Gate::cnot(w[0], w[1]))?;
    }
    // RZ(φ) = exp(−iφZ/2), so φ = −2·scale·θ
    let rz = match angle {
        Angle::Fixed(v) => Angle::Fixed(-2.0 * v),
        Angle::Param { index, scale } => Angle::Param { index, scale: -2.0 * scale },
    };
    c.push(Gate::rz(last, rz))?;
    for w in support.windows(2).rev() {
        c.push(Gate::cnot(w[0], w[1]))?;
    }
    for &q in &support {
        match p.get(q) {
            Pauli::X => {
                c.push(Gate::h(q))?;
            }
            Pauli::Y => {
                c.push(Gate::rx(q, -FRAC_PI_2))?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// Hartree-Fock preparation followed by `Π_k Π_{(c,P) ∈ G_k} exp(i θ_k c P)`,
/// one Trotter step in the listed order.
pub fn ucc_circuit(hf_bits: &str, generators: &[Vec<(PauliString, f64)>]) -> Result<Ansatz> {
    let mut c = hartree_fock_circuit(hf_bits)?;
    let n = c.n_qubits();
    for (k, gen) in generators.iter().enumerate() {
        let t = c.add_param(format!("theta[{k}]"));
        for (p, coef) in gen {
            if p.n_qubits() != n {
                return Err(Error::LengthMismatch { expected: n, actual: p.n_qubits() });
            }
            append_pauli_rotation(&mut c, p, Angle::Param { index: t, scale: *coef })?;
        }
    }
    let reference_params = vec![0.0; c.n_params()];
    Ok(Ansatz { family: AnsatzFamily::Uccsd, circuit: c, hf_bitstring: hf_bits.into(), reference_params })
}

/// Parity-mapped, two-qubit-reduced UCCSD for `norb` spatial orbitals.
pub fn uccsd(norb: usize, n_alpha: usize, n_beta: usize) -> Result<Ansatz> {
    if norb < 2 || n_alpha > norb || n_beta > norb {
        return Err(Error::Config(format!("invalid active space: {norb} orbitals, {n_alpha}α {n_beta}β")));
    }
    let gens: Vec<_> =
        uccsd_excitations(norb, n_alpha, n_beta).iter().map(|e| excitation_generator(e, norb, n_alpha, n_beta)).collect();
    ucc_circuit(&hf_parity_bitstring(norb, n_alpha, n_beta), &gens)
}

/// `RY` layer, then `n_layers` × (CZ on every edge of `entangler_map`, `RY` layer).
///
/// There is no X preparation: the reference parameters put `RY(π)` on the
/// qubits set in `hf_bits` in the first layer and zero elsewhere.
pub fn hardware_efficient_circuit(
    n_qubits: usize,
    n_layers: usize,
    entangler_map: &[(usize, usize)],
    hf_bits: &str,
) -> Result<Ansatz> {
    if hf_bits.len() != n_qubits {
        return Err(Error::LengthMismatch { expected: n_qubits, actual: hf_bits.len() });
    }
    let hf = bits_of(hf_bits)?;
    let mut c = Circuit::new(n_qubits);
    let layer = |c: &mut Circuit, l: usize| -> Result<()> {
        for q in 0..n_qubits {
            let t = c.add_param(format!("theta[{}]", l * n_qubits + q));
            c.push(Gate::ry(q, Angle::param(t)))?;
        }
        Ok(())
    };
    layer(&mut c, 0)?;
    for l in 1..=n_layers {
        for &(a, b) in entangler_map {
            c.push(Gate::new(crate::sim::GateKind::Cz, vec![a, b], vec![])?)?;
        }
        layer(&mut c, l)?;
    }
    let mut reference_params = vec![0.0; c.n_params()];
    for (q, r) in reference_params.iter_mut().enumerate().take(n_qubits) {
        if (hf >> q) & 1 == 1 {
            *r = PI;
        }
    }
    Ok(Ansatz { family: AnsatzFamily::HardwareEfficient, circuit: c, hf_bitstring: hf_bits.into(), reference_params })
}

/// Four-qubit LiH layout: two entangling layers on the T map, 12 angles.
pub fn lih_hardware_efficient() -> Ansatz {
    hardware_efficient_circuit(4, 2, &T_MAP, "0011").expect("fixed layout")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitStats {
    pub depth: usize,
    pub two_qubit_gates: usize,
    pub n_params: usize,
}

/// Depth is the longest chain of gates sharing qubits (ASAP layering).
pub fn circuit_stats(c: &Circuit) -> CircuitStats {
    let mut frontier = vec![0usize; c.n_qubits()];
    let mut two = 0;
    for g in c.gates() {
        let level = g.qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
        for &q in &g.qubits {
            frontier[q] = level;
        }
        two += g.is_two_qubit() as usize;
    }
    CircuitStats { depth: frontier.into_iter().max().unwrap_or(0), two_qubit_gates: two, n_params: c.n_params() }
}
