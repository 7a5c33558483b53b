use std::path::PathBuf;
use std::str::FromStr;

use crate::ansatz::{h2_compact, hardware_efficient_circuit, hf_parity_bitstring, uccsd, Ansatz, T_MAP};
use crate::chemdata::{builtin, load};
use crate::mitigation::{calibrate_confusion, ConfusionMatrix};
use crate::pauli::PauliHamiltonian;
use crate::rng::derive_seed;
use crate::sim::{NoiseModel, SINGLE_TO_TWO_QUBIT_RATIO};
use crate::vqe::{NelderMeadConfig, Optimizer, SpsaConfig};
use crate::{Error, Result};

/// Two-qubit error rate of the reference device (CZ gate).
pub const DEVICE_P2: f64 = 1.8e-2;

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Builtin(String),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Ideal,
    Noisy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mitigation {
    None,
    Readout,
    Rem,
    ReadoutRem,
}

impl Mitigation {
    pub fn readout(self) -> bool {
        matches!(self, Mitigation::Readout | Mitigation::ReadoutRem)
    }

    pub fn rem(self) -> bool {
        matches!(self, Mitigation::Rem | Mitigation::ReadoutRem)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfusionSource {
    Ideal,
    FigureS2,
    /// Built-in hardware readout noise, mitigated with a sampled calibration.
    Calibrate,
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzChoice {
    Compact,
    Uccsd,
    Hwe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimizerChoice {
    NelderMead,
    Spsa,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    /// The ansatz's Hartree-Fock parameters.
    HartreeFock,
    None,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl FromStr for BackendKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(BackendKind::Ideal),
            "noisy" => Ok(BackendKind::Noisy),
            _ => Err(bad(format!("unknown backend {s:?} (ideal|noisy)"))),
        }
    }
}

impl FromStr for Mitigation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Mitigation::None),
            "readout" => Ok(Mitigation::Readout),
            "rem" => Ok(Mitigation::Rem),
            "readout+rem" | "rem+readout" => Ok(Mitigation::ReadoutRem),
            _ => Err(bad(format!("unknown mitigation {s:?} (none|readout|rem|readout+rem)"))),
        }
    }
}

impl FromStr for ConfusionSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ideal" => ConfusionSource::Ideal,
            "figure-s2" => ConfusionSource::FigureS2,
            "calibrate" => ConfusionSource::Calibrate,
            path => ConfusionSource::File(PathBuf::from(path)),
        })
    }
}

impl FromStr for AnsatzChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" => Ok(AnsatzChoice::Compact),
            "uccsd" => Ok(AnsatzChoice::Uccsd),
            "hwe" => Ok(AnsatzChoice::Hwe),
            _ => Err(bad(format!("unknown ansatz {s:?} (compact|uccsd|hwe)"))),
        }
    }
}

impl FromStr for OptimizerChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nelder-mead" => Ok(OptimizerChoice::NelderMead),
            "spsa" => Ok(OptimizerChoice::Spsa),
            "sweep" => Ok(OptimizerChoice::Sweep),
            _ => Err(bad(format!("unknown optimizer {s:?} (nelder-mead|spsa|sweep)"))),
        }
    }
}

impl FromStr for Reference {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hf" | "auto" => Ok(Reference::HartreeFock),
            "none" => Ok(Reference::None),
            _ => Err(bad(format!("unknown reference {s:?} (hf|none)"))),
        }
    }
}

/// Everything a run needs, as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub source: Source,
    pub backend: BackendKind,
    pub p2: Option<f64>,
    pub p1: Option<f64>,
    pub shots: Option<u64>,
    pub seed: u64,
    pub mitigation: Mitigation,
    pub confusion: ConfusionSource,
    pub ansatz: Option<AnsatzChoice>,
    pub optimizer: Option<OptimizerChoice>,
    pub reference: Reference,
    /// Alpha and beta electrons for file-loaded Hamiltonians.
    pub electrons: Option<(usize, usize)>,
    /// Restrict to one bond length.
    pub r: Option<f64>,
    pub calibration_shots: u64,
    pub calibration_repeats: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            source: Source::Builtin("h2".into()),
            backend: BackendKind::Ideal,
            p2: None,
            p1: None,
            shots: None,
            seed: 0,
            mitigation: Mitigation::None,
            confusion: ConfusionSource::Ideal,
            ansatz: None,
            optimizer: None,
            reference: Reference::HartreeFock,
            electrons: None,
            r: None,
            calibration_shots: 1000,
            calibration_repeats: 100,
        }
    }
}

/// One Hamiltonian to solve; `r` is `None` for file input.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub r: Option<f64>,
    pub hamiltonian: PauliHamiltonian,
}

/// A validated configuration with every default filled in.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub name: String,
    pub problems: Vec<Problem>,
    pub equilibrium: Option<f64>,
    pub ansatz: Ansatz,
    pub ansatz_choice: AnsatzChoice,
    pub optimizer_choice: OptimizerChoice,
    pub noise: Option<NoiseModel>,
    /// Matrix used for unfolding; identity when readout is ideal.
    pub mitigation_matrix: ConfusionMatrix,
    pub shots: Option<u64>,
    pub seed: u64,
    pub mitigation: Mitigation,
    pub reference: Reference,
    pub p2: f64,
    pub p1: f64,
}

impl Resolved {
    pub fn optimizer(&self) -> Optimizer {
        match self.optimizer_choice {
            OptimizerChoice::Spsa => Optimizer::Spsa(SpsaConfig { seed: derive_seed(self.seed, 0x5A5A), ..Default::default() }),
            // 2000 evaluations suit up to ~5 parameters; larger simplices need more
            _ => Optimizer::NelderMead(NelderMeadConfig {
                max_evals: (400 * self.ansatz.n_params()).max(2000),
                ..Default::default()
            }),
        }
    }
}

/// Tensor power of a two-qubit matrix over pairs `(0,1), (2,3), …`.
fn readout_for(n_qubits: usize, two_qubit: &ConfusionMatrix) -> Result<ConfusionMatrix> {
    if !n_qubits.is_multiple_of(2) {
        return Err(bad(format!("a two-qubit readout matrix cannot tile {n_qubits} qubits")));
    }
    let mut m = two_qubit.clone();
    while m.n_qubits() < n_qubits {
        m = two_qubit.kron(&m)?;
    }
    Ok(m)
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(bad(format!("{name} = {p} is outside [0, 1]")));
    }
    Ok(())
}

impl RunConfig {
    /// Checks every flag combination and builds the run plan. Nothing is
    /// simulated except an optional confusion calibration.
    pub fn resolve(&self) -> Result<Resolved> {
        let (name, problems, equilibrium, active) = match &self.source {
            Source::Builtin(m) => {
                let ds = builtin(m).map_err(|e| bad(e.to_string()))?;
                let problems: Vec<Problem> = match self.r {
                    Some(r) => vec![Problem {
                        r: Some(r),
                        hamiltonian: ds.geometry(r).map_err(|e| bad(e.to_string()))?.hamiltonian.clone(),
                    }],
                    None => ds.geometries.iter().map(|g| Problem { r: Some(g.r), hamiltonian: g.hamiltonian.clone() }).collect(),
                };
                (ds.name.clone(), problems, Some(ds.equilibrium), ds.active_space)
            }
            Source::File(path) => {
                if self.r.is_some() {
                    return Err(bad("--r applies to built-in molecules only"));
                }
                let h = load(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
                let n = h.n_qubits();
                if n % 2 != 0 {
                    return Err(bad(format!("{n}-qubit Hamiltonian does not fit the reduced parity layout")));
                }
                let (na, nb) = self.electrons.unwrap_or((1, 1));
                let norb = (n + 2) / 2;
                if na > norb || nb > norb {
                    return Err(bad(format!("{na}α {nb}β electrons do not fit {norb} orbitals")));
                }
                let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                (name, vec![Problem { r: None, hamiltonian: h }], None, (norb, na, nb))
            }
        };
        if matches!(self.source, Source::Builtin(_)) && self.electrons.is_some() {
            return Err(bad("--electrons applies to Hamiltonian files only"));
        }
        let n = problems[0].hamiltonian.n_qubits();
        let (norb, na, nb) = active;

        let ansatz_choice = self.ansatz.unwrap_or(match (name.as_str(), n) {
            (_, 2) if name != "heh+" => AnsatzChoice::Compact,
            _ => AnsatzChoice::Uccsd,
        });
        let ansatz = match ansatz_choice {
            AnsatzChoice::Compact => {
                if n != 2 {
                    return Err(bad("the compact ansatz needs a two-qubit Hamiltonian"));
                }
                h2_compact()
            }
            AnsatzChoice::Uccsd => uccsd(norb, na, nb)?,
            AnsatzChoice::Hwe => {
                let map: Vec<(usize, usize)> = if n == 4 { T_MAP.to_vec() } else { (0..n - 1).map(|q| (q, q + 1)).collect() };
                hardware_efficient_circuit(n, 2, &map, &hf_parity_bitstring(norb, na, nb))?
            }
        };

        let optimizer_choice = match self.optimizer {
            Some(OptimizerChoice::Sweep) if ansatz.n_params() != 1 => {
                return Err(bad(format!("sweep needs a one-parameter ansatz, this one has {}", ansatz.n_params())))
            }
            Some(o) => o,
            None if ansatz.n_params() == 1 => OptimizerChoice::Sweep,
            None if self.shots.is_some() => OptimizerChoice::Spsa,
            None => OptimizerChoice::NelderMead,
        };

        if self.mitigation.rem() && self.reference == Reference::None {
            return Err(bad("REM needs a reference state; drop --reference none or choose --mitigation none|readout"));
        }
        if self.shots == Some(0) {
            return Err(bad("--shots must be positive"));
        }
        if let Some(p1) = self.p1 {
            check_probability("p1", p1)?;
        }
        if let Some(p2) = self.p2 {
            check_probability("p2", p2)?;
        }

        let (noise, mitigation_matrix, p2, p1) = match self.backend {
            BackendKind::Ideal => {
                if self.p2.is_some() || self.p1.is_some() {
                    return Err(bad("--p1/--p2 need --backend noisy"));
                }
                if self.shots.is_some() {
                    return Err(bad("the ideal backend is exact; --shots needs --backend noisy"));
                }
                if self.confusion != ConfusionSource::Ideal {
                    return Err(bad("readout noise needs --backend noisy"));
                }
                (None, ConfusionMatrix::identity(n), 0.0, 0.0)
            }
            BackendKind::Noisy => {
                let p2 = self.p2.unwrap_or(DEVICE_P2);
                let p1 = self.p1.unwrap_or(SINGLE_TO_TWO_QUBIT_RATIO * p2);
                let model = NoiseModel::with_rates(p1, p2)?;
                let (model, matrix) = match &self.confusion {
                    ConfusionSource::Ideal => (model, ConfusionMatrix::identity(n)),
                    ConfusionSource::FigureS2 => {
                        let c = readout_for(n, &ConfusionMatrix::figure_s2())?;
                        (model.with_readout(c.clone()), c)
                    }
                    ConfusionSource::Calibrate => {
                        let c = readout_for(n, &ConfusionMatrix::figure_s2())?;
                        let cal = calibrate_confusion(
                            &c,
                            self.calibration_shots,
                            self.calibration_repeats,
                            derive_seed(self.seed, 0xCA1),
                        )?;
                        (model.with_readout(c), cal)
                    }
                    ConfusionSource::File(path) => {
                        let c = ConfusionMatrix::load(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
                        if c.n_qubits() != n {
                            return Err(bad(format!("confusion matrix has {} qubits, Hamiltonian {n}", c.n_qubits())));
                        }
                        (model.with_readout(c.clone()), c)
                    }
                };
                (Some(model), matrix, p2, p1)
            }
        };
        Ok(Resolved {
            name,
            problems,
            equilibrium,
            ansatz,
            ansatz_choice,
            optimizer_choice,
            noise,
            mitigation_matrix,
            shots: self.shots,
            seed: self.seed,
            mitigation: self.mitigation,
            reference: self.reference,
            p2,
            p1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn defaults_resolve() {
        let r = cfg().resolve().unwrap();
        assert_eq!(r.problems.len(), 12);
        assert_eq!(r.ansatz_choice, AnsatzChoice::Compact);
        assert_eq!(r.optimizer_choice, OptimizerChoice::Sweep);
        let heh = RunConfig { source: Source::Builtin("heh+".into()), ..cfg() }.resolve().unwrap();
        assert_eq!((heh.ansatz_choice, heh.ansatz.n_params()), (AnsatzChoice::Uccsd, 3));
        let lih = RunConfig { source: Source::Builtin("lih".into()), ..cfg() }.resolve().unwrap();
        assert_eq!(lih.ansatz.n_params(), 8);
    }

    #[test]
    fn invalid_combinations() {
        let cases = [
            RunConfig { mitigation: Mitigation::Rem, reference: Reference::None, ..cfg() },
            RunConfig { p2: Some(0.01), ..cfg() },
            RunConfig { shots: Some(100), ..cfg() },
            RunConfig { confusion: ConfusionSource::FigureS2, ..cfg() },
            RunConfig { backend: BackendKind::Noisy, p2: Some(1.5), ..cfg() },
            RunConfig { backend: BackendKind::Noisy, shots: Some(0), ..cfg() },
            RunConfig { source: Source::Builtin("heh+".into()), optimizer: Some(OptimizerChoice::Sweep), ..cfg() },
            RunConfig { source: Source::Builtin("lih".into()), ansatz: Some(AnsatzChoice::Compact), ..cfg() },
            RunConfig { source: Source::Builtin("beh2".into()), ..cfg() },
            RunConfig { r: Some(0.123), ..cfg() },
        ];
        for c in cases {
            assert!(matches!(c.resolve(), Err(Error::Config(_))), "{c:?}");
        }
    }

    #[test]
    fn noisy_defaults() {
        let r = RunConfig { backend: BackendKind::Noisy, confusion: ConfusionSource::FigureS2, ..cfg() }.resolve().unwrap();
        assert_eq!(r.p2, DEVICE_P2);
        assert!((r.p1 - 1.8e-3).abs() < 1e-15);
        assert_eq!(r.mitigation_matrix, ConfusionMatrix::figure_s2());
        let lih = RunConfig {
            source: Source::Builtin("lih".into()),
            backend: BackendKind::Noisy,
            confusion: ConfusionSource::FigureS2,
            shots: Some(1000),
            ..cfg()
        }
        .resolve()
        .unwrap();
        assert_eq!(lih.mitigation_matrix.n_qubits(), 4);
        assert_eq!(lih.optimizer_choice, OptimizerChoice::Spsa);
    }
}
