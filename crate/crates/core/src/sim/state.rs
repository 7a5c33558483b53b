use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Pure statevector or row-major density matrix over `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    Pure(Vec<Complex64>),
    Mixed { dim: usize, data: Vec<Complex64> },
}

impl QuantumState {
    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[index] = ONE;
        QuantumState::Pure(amps)
    }

    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(a) => a.len(),
            QuantumState::Mixed { dim, .. } => *dim,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, QuantumState::Pure(_))
    }

    /// Density matrix `|ψ⟩⟨ψ|` (or a copy of an existing one).
    pub fn to_density(&self) -> QuantumState {
        match self {
            QuantumState::Pure(a) => {
                let dim = a.len();
                let mut data = vec![ZERO; dim * dim];
                for r in 0..dim {
                    for c in 0..dim {
                        data[r * dim + c] = a[r] * a[c].conj();
                    }
                }
                QuantumState::Mixed { dim, data }
            }
            mixed => mixed.clone(),
        }
    }

    /// Trace for density matrices, squared norm for statevectors.
    pub fn trace(&self) -> f64 {
        match self {
            QuantumState::Pure(a) => a.iter().map(|z| z.norm_sqr()).sum(),
            QuantumState::Mixed { dim, data } => (0..*dim).map(|k| data[k * dim + k].re).sum(),
        }
    }

    /// Max-norm of `ρ − ρ†`; zero for statevectors.
    pub fn hermiticity_defect(&self) -> f64 {
        match self {
            QuantumState::Pure(_) => 0.0,
            QuantumState::Mixed { dim, data } => {
                let mut worst = 0.0f64;
                for r in 0..*dim {
                    for c in 0..*dim {
                        worst = worst.max((data[r * dim + c] - data[c * dim + r].conj()).norm());
                    }
                }
                worst
            }
        }
    }

    /// Outcome probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        match self {
            QuantumState::Pure(a) => a.iter().map(|z| z.norm_sqr()).collect(),
            QuantumState::Mixed { dim, data } => (0..*dim).map(|k| data[k * dim + k].re.max(0.0)).collect(),
        }
    }

    /// `⟨ψ|ρ|ψ⟩` (or `|⟨ψ|φ⟩|²`) against a pure reference.
    pub fn fidelity_with_pure(&self, psi: &[Complex64]) -> f64 {
        match self {
            QuantumState::Pure(a) => a.iter().zip(psi).map(|(x, y)| y.conj() * x).sum::<Complex64>().norm_sqr(),
            QuantumState::Mixed { dim, data } => {
                let mut acc = ZERO;
                for r in 0..*dim {
                    for c in 0..*dim {
                        acc += psi[r].conj() * data[r * dim + c] * psi[c];
                    }
                }
                acc.re
            }
        }
    }

    /// Reduced density matrix of one qubit as `[[ρ00, ρ01], [ρ10, ρ11]]`.
    pub fn reduced_qubit(&self, q: usize) -> [[Complex64; 2]; 2] {
        let rho = self.to_density();
        let QuantumState::Mixed { dim, data } = rho else { unreachable!() };
        let m = 1usize << q;
        let mut out = [[ZERO; 2]; 2];
        for base in (0..dim).filter(|k| k & m == 0) {
            for (i, a) in [base, base | m].into_iter().enumerate() {
                for (j, b) in [base, base | m].into_iter().enumerate() {
                    out[i][j] += data[a * dim + b];
                }
            }
        }
        out
    }
}
