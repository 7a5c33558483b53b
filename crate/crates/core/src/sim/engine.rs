use num_complex::Complex64;

use super::circuit::{BoundGate, Circuit, Matrix2};
use super::noise::{depolarize, NoiseModel};
use super::state::QuantumState;
use crate::Result;

fn conj_matrix(m: &Matrix2) -> Matrix2 {
    [[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]]
}

/// Applies `m` to bit `bit` of a register stored as a flat amplitude vector.
fn apply_single(amps: &mut [Complex64], bit: usize, m: &Matrix2) {
    let stride = 1usize << bit;
    let len = amps.len();
    let mut base = 0;
    while base < len {
        for i in base..base + stride {
            let a0 = amps[i];
            let a1 = amps[i + stride];
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
        base += 2 * stride;
    }
}

fn apply_cnot(amps: &mut [Complex64], control: usize, target: usize) {
    let (c, t) = (1usize << control, 1usize << target);
    for i in 0..amps.len() {
        if i & c != 0 && i & t == 0 {
            amps.swap(i, i | t);
        }
    }
}

fn apply_cz(amps: &mut [Complex64], a: usize, b: usize) {
    let m = (1usize << a) | (1usize << b);
    for (i, z) in amps.iter_mut().enumerate() {
        if i & m == m {
            *z = -*z;
        }
    }
}

/// Noiseless execution; returns a normalized statevector.
pub fn run_statevector(circuit: &Circuit, bindings: &[f64]) -> Result<QuantumState> {
    let gates = circuit.bind(bindings)?;
    let mut amps = match QuantumState::zero(circuit.n_qubits()) {
        QuantumState::Pure(a) => a,
        _ => unreachable!(),
    };
    for g in &gates {
        match *g {
            BoundGate::Single { qubit, ref matrix } => apply_single(&mut amps, qubit, matrix),
            BoundGate::Cnot { control, target } => apply_cnot(&mut amps, control, target),
            BoundGate::Cz { a, b } => apply_cz(&mut amps, a, b),
        }
    }
    Ok(QuantumState::Pure(amps))
}

/// Applies a bound gate to a density matrix in place (`ρ → UρU†`).
///
/// The row-major matrix is treated as a `2n`-qubit vector whose high `n`
/// bits index rows; `U` acts on the row bits and `U*` on the column bits.
pub(crate) fn apply_to_density(data: &mut [Complex64], n: usize, gate: &BoundGate) {
    match *gate {
        BoundGate::Single { qubit, ref matrix } => {
            apply_single(data, qubit + n, matrix);
            apply_single(data, qubit, &conj_matrix(matrix));
        }
        BoundGate::Cnot { control, target } => {
            apply_cnot(data, control + n, target + n);
            apply_cnot(data, control, target);
        }
        BoundGate::Cz { a, b } => {
            apply_cz(data, a + n, b + n);
            apply_cz(data, a, b);
        }
    }
}

/// Density-matrix execution with a depolarizing channel after every gate.
pub fn run_density(circuit: &Circuit, bindings: &[f64], noise: &NoiseModel) -> Result<QuantumState> {
    let gates = circuit.bind(bindings)?;
    let n = circuit.n_qubits();
    let QuantumState::Mixed { dim, mut data } = QuantumState::zero(n).to_density() else { unreachable!() };
    for g in &gates {
        apply_to_density(&mut data, n, g);
        match *g {
            BoundGate::Single { qubit, .. } => depolarize(&mut data, dim, &[qubit], noise.p1()),
            BoundGate::Cnot { control, target } => depolarize(&mut data, dim, &[control, target], noise.p2()),
            BoundGate::Cz { a, b } => depolarize(&mut data, dim, &[a, b], noise.p2()),
        }
    }
    debug_assert!((QuantumState::Mixed { dim, data: data.clone() }.trace() - 1.0).abs() < 1e-9);
    Ok(QuantumState::Mixed { dim, data })
}

/// Applies noiseless gates to an existing state (used for basis changes).
pub(crate) fn apply_gates(state: &mut QuantumState, gates: &[BoundGate]) {
    match state {
        QuantumState::Pure(amps) => {
            for g in gates {
                match *g {
                    BoundGate::Single { qubit, ref matrix } => apply_single(amps, qubit, matrix),
                    BoundGate::Cnot { control, target } => apply_cnot(amps, control, target),
                    BoundGate::Cz { a, b } => apply_cz(amps, a, b),
                }
            }
        }
        QuantumState::Mixed { dim, data } => {
            let n = dim.trailing_zeros() as usize;
            for g in gates {
                apply_to_density(data, n, g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::circuit::{Angle, Gate};

    #[test]
    fn empty_circuit_is_all_zeros() {
        let s = run_statevector(&Circuit::new(2), &[]).unwrap();
        assert_eq!(s, QuantumState::basis(2, 0));
    }

    #[test]
    fn x_on_qubit_zero_gives_01() {
        let mut c = Circuit::new(2);
        c.push(Gate::x(0)).unwrap();
        let s = run_statevector(&c, &[]).unwrap();
        assert_eq!(s, QuantumState::basis(2, 0b01));
    }

    #[test]
    fn bell_state_and_cz_phase() {
        let mut c = Circuit::new(2);
        c.push(Gate::h(1)).unwrap().push(Gate::cnot(1, 0)).unwrap();
        let QuantumState::Pure(a) = run_statevector(&c, &[]).unwrap() else { panic!() };
        assert!((a[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((a[3].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        c.push(Gate::cz(0, 1)).unwrap();
        let QuantumState::Pure(a) = run_statevector(&c, &[]).unwrap() else { panic!() };
        assert!((a[3].re + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn unbound_parameter_rejected() {
        let mut c = Circuit::new(1);
        let t = c.add_param("theta");
        c.push(Gate::ry(0, Angle::param(t))).unwrap();
        assert!(run_statevector(&c, &[]).is_err());
        assert!(run_density(&c, &[], &NoiseModel::noiseless()).is_err());
    }

    #[test]
    fn zero_noise_density_matches_outer_product() {
        let mut c = Circuit::new(3);
        let t = c.add_param("t");
        c.push(Gate::h(0)).unwrap();
        c.push(Gate::ry(1, Angle::param(t))).unwrap();
        c.push(Gate::cnot(0, 2)).unwrap();
        c.push(Gate::new(crate::sim::GateKind::U3, vec![2], vec![0.4.into(), 1.2.into(), (-0.7).into()]).unwrap()).unwrap();
        c.push(Gate::cz(2, 1)).unwrap();
        let pure = run_statevector(&c, &[0.77]).unwrap().to_density();
        let mixed = run_density(&c, &[0.77], &NoiseModel::noiseless()).unwrap();
        let (QuantumState::Mixed { data: a, .. }, QuantumState::Mixed { data: b, .. }) = (pure, mixed) else { panic!() };
        let err = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }
}
