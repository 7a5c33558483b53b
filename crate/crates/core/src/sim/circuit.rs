use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::{Error, Result};

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    U1,
    U2,
    U3,
    X,
    H,
    Cz,
    /// Qubits are `[control, target]`.
    Cnot,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cz | GateKind::Cnot => 2,
            _ => 1,
        }
    }

    pub fn n_angles(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::U1 => 1,
            GateKind::U2 => 2,
            GateKind::U3 => 3,
            GateKind::X | GateKind::H | GateKind::Cz | GateKind::Cnot => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::U1 => "u1",
            GateKind::U2 => "u2",
            GateKind::U3 => "u3",
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::Cz => "cz",
            GateKind::Cnot => "cx",
        }
    }
}

/// A gate angle: either a constant or `scale · θ[index]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Fixed(f64),
    Param { index: usize, scale: f64 },
}

impl Angle {
    pub fn param(index: usize) -> Self {
        Angle::Param { index, scale: 1.0 }
    }
}

impl From<f64> for Angle {
    fn from(v: f64) -> Self {
        Angle::Fixed(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub angles: Vec<Angle>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>, angles: Vec<Angle>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!("{} acts on {} qubit(s), got {}", kind.name(), kind.arity(), qubits.len())));
        }
        if angles.len() != kind.n_angles() {
            return Err(Error::InvalidGate(format!("{} takes {} angle(s), got {}", kind.name(), kind.n_angles(), angles.len())));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidGate(format!("{} on repeated qubit {}", kind.name(), qubits[0])));
        }
        Ok(Gate { kind, qubits, angles })
    }

    pub fn x(q: usize) -> Self {
        Gate { kind: GateKind::X, qubits: vec![q], angles: vec![] }
    }

    pub fn h(q: usize) -> Self {
        Gate { kind: GateKind::H, qubits: vec![q], angles: vec![] }
    }

    pub fn rx(q: usize, a: impl Into<Angle>) -> Self {
        Gate { kind: GateKind::Rx, qubits: vec![q], angles: vec![a.into()] }
    }

    pub fn ry(q: usize, a: impl Into<Angle>) -> Self {
        Gate { kind: GateKind::Ry, qubits: vec![q], angles: vec![a.into()] }
    }

    pub fn rz(q: usize, a: impl Into<Angle>) -> Self {
        Gate { kind: GateKind::Rz, qubits: vec![q], angles: vec![a.into()] }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        assert_ne!(control, target);
        Gate { kind: GateKind::Cnot, qubits: vec![control, target], angles: vec![] }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        assert_ne!(a, b);
        Gate { kind: GateKind::Cz, qubits: vec![a, b], angles: vec![] }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    fn resolve(&self, bindings: &[f64], names: &[String]) -> Result<Vec<f64>> {
        self.angles
            .iter()
            .map(|a| match *a {
                Angle::Fixed(v) => Ok(v),
                Angle::Param { index, scale } => {
                    bindings.get(index).map(|t| scale * t).ok_or_else(|| Error::UnboundParameter(param_name(names, index)))
                }
            })
            .collect()
    }

    /// 2×2 unitary of a single-qubit gate for resolved angles.
    pub fn matrix(kind: GateKind, angles: &[f64]) -> Matrix2 {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let eix = |phi: f64| Complex64::from_polar(1.0, phi);
        match kind {
            GateKind::Rx => {
                let (s, co) = (angles[0] / 2.0).sin_cos();
                [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
            }
            GateKind::Ry => {
                let (s, co) = (angles[0] / 2.0).sin_cos();
                [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
            }
            GateKind::Rz => [[eix(-angles[0] / 2.0), c(0.0, 0.0)], [c(0.0, 0.0), eix(angles[0] / 2.0)]],
            GateKind::U1 => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), eix(angles[0])]],
            GateKind::U2 => {
                let (phi, lam) = (angles[0], angles[1]);
                [[c(FRAC_1_SQRT_2, 0.0), -eix(lam) * FRAC_1_SQRT_2], [eix(phi) * FRAC_1_SQRT_2, eix(phi + lam) * FRAC_1_SQRT_2]]
            }
            GateKind::U3 => {
                let (theta, phi, lam) = (angles[0], angles[1], angles[2]);
                let (s, co) = (theta / 2.0).sin_cos();
                [[c(co, 0.0), -eix(lam) * s], [eix(phi) * s, eix(phi + lam) * co]]
            }
            GateKind::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            GateKind::H => [[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]],
            GateKind::Cz | GateKind::Cnot => panic!("{} is not a single-qubit gate", kind.name()),
        }
    }
}

fn param_name(names: &[String], index: usize) -> String {
    names.get(index).cloned().unwrap_or_else(|| format!("θ[{index}]"))
}

/// A gate with concrete angles, ready to execute.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundGate {
    Single { qubit: usize, matrix: Matrix2 },
    Cnot { control: usize, target: usize },
    Cz { a: usize, b: usize },
}

/// Ordered gate list over `n_qubits` with named parameter slots.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    params: Vec<String>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, gates: Vec::new(), params: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn n_params(&self) -> usize {
        self.params.len()
    }

    pub fn param_names(&self) -> &[String] {
        &self.params
    }

    /// Registers a named parameter slot and returns its index.
    pub fn add_param(&mut self, name: impl Into<String>) -> usize {
        self.params.push(name.into());
        self.params.len() - 1
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        let gate = Gate::new(gate.kind, gate.qubits, gate.angles)?;
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n_qubits });
        }
        for a in &gate.angles {
            if let Angle::Param { index, .. } = *a {
                if index >= self.params.len() {
                    return Err(Error::UnboundParameter(format!("θ[{index}] (slot not declared)")));
                }
            }
        }
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends every gate of `other`, which must act on the same register
    /// and use no parameter slots.
    pub fn extend_fixed(&mut self, other: &Circuit) -> Result<()> {
        if other.n_params() != 0 {
            return Err(Error::InvalidGate("cannot splice a parametric circuit".into()));
        }
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// Resolves every angle against `bindings`.
    pub fn bind(&self, bindings: &[f64]) -> Result<Vec<BoundGate>> {
        if bindings.len() < self.params.len() {
            return Err(Error::UnboundParameter(param_name(&self.params, bindings.len())));
        }
        if bindings.len() > self.params.len() {
            return Err(Error::ParameterCount { expected: self.params.len(), actual: bindings.len() });
        }
        self.gates
            .iter()
            .map(|g| {
                Ok(match g.kind {
                    GateKind::Cnot => BoundGate::Cnot { control: g.qubits[0], target: g.qubits[1] },
                    GateKind::Cz => BoundGate::Cz { a: g.qubits[0], b: g.qubits[1] },
                    kind => {
                        BoundGate::Single { qubit: g.qubits[0], matrix: Gate::matrix(kind, &g.resolve(bindings, &self.params)?) }
                    }
                })
            })
            .collect()
    }

    /// Copy with all slots replaced by fixed angles.
    pub fn bound_copy(&self, bindings: &[f64]) -> Result<Circuit> {
        self.bind(bindings)?;
        let gates = self
            .gates
            .iter()
            .map(|g| Gate {
                kind: g.kind,
                qubits: g.qubits.clone(),
                angles: g
                    .angles
                    .iter()
                    .map(|a| match *a {
                        Angle::Fixed(v) => Angle::Fixed(v),
                        Angle::Param { index, scale } => Angle::Fixed(scale * bindings[index]),
                    })
                    .collect(),
            })
            .collect();
        Ok(Circuit { n_qubits: self.n_qubits, gates, params: Vec::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_unitary(m: &Matrix2) -> bool {
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot - Complex64::new(want, 0.0)).norm() > 1e-12 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn single_qubit_matrices_are_unitary() {
        for kind in [GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::U1, GateKind::U2, GateKind::U3, GateKind::X, GateKind::H]
        {
            let angles = [0.3, -1.1, 2.4];
            assert!(is_unitary(&Gate::matrix(kind, &angles[..kind.n_angles()])), "{kind:?}");
        }
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::new(GateKind::Rx, vec![0], vec![]).is_err());
        assert!(Gate::new(GateKind::Cnot, vec![1, 1], vec![]).is_err());
        let mut c = Circuit::new(2);
        assert!(matches!(c.push(Gate::x(2)), Err(Error::QubitOutOfRange { .. })));
        assert!(c.push(Gate::ry(0, Angle::param(0))).is_err());
        let t = c.add_param("t");
        c.push(Gate::ry(0, Angle::param(t))).unwrap();
        assert!(matches!(c.bind(&[]), Err(Error::UnboundParameter(name)) if name == "t"));
        assert!(matches!(c.bind(&[1.0, 2.0]), Err(Error::ParameterCount { .. })));
        assert_eq!(c.bind(&[0.5]).unwrap().len(), 1);
    }
}
