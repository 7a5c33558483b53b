//! Embedded two- and four-qubit molecular Hamiltonians with their published
//! reference and measured energies, plus Hamiltonian file ingestion.

use std::path::Path;

use serde::Serialize;

use crate::pauli::PauliHamiltonian;
use crate::{Error, Result};

/// Geometries match to this tolerance (Å).
const R_TOL: f64 = 1e-6;

pub const LIH_FROZEN_CORE: f64 = -7.7983328;
pub const LIH_NUCLEAR_REPULSION: f64 = 0.99538004;
pub const LIH_BOND_LENGTH: f64 = 1.5949;

const H2_LABELS: [&str; 5] = ["II", "IZ", "ZI", "ZZ", "XX"];

/// r, II, IZ, ZI, ZZ, XX, V_NN
const H2_ROWS: [[f64; 7]; 12] = [
    [0.45, -0.908, 0.634, -0.634, -0.013, 0.167, 1.1759],
    [0.55, -0.981, 0.536, -0.536, -0.012, 0.171, 0.9621],
    [0.65, -1.028, 0.455, -0.455, -0.012, 0.176, 0.8141],
    [0.70, -1.044, 0.420, -0.420, -0.012, 0.179, 0.7560],
    [0.7414, -1.054, 0.394, -0.394, -0.011, 0.181, 0.7138],
    [0.80, -1.063, 0.360, -0.360, -0.011, 0.185, 0.6615],
    [0.85, -1.068, 0.334, -0.334, -0.010, 0.188, 0.6226],
    [1.00, -1.069, 0.268, -0.268, -0.009, 0.197, 0.5292],
    [1.15, -1.058, 0.215, -0.215, -0.007, 0.206, 0.4602],
    [1.35, -1.033, 0.161, -0.161, -0.005, 0.220, 0.3920],
    [1.50, -1.010, 0.129, -0.129, -0.004, 0.230, 0.3528],
    [1.65, -0.985, 0.103, -0.103, -0.003, 0.239, 0.3207],
];

const HEH_LABELS: [&str; 9] = ["II", "IZ", "ZI", "ZZ", "ZX", "XZ", "IX", "XI", "XX"];

/// r, II, IZ, ZI, ZZ, ZX, XZ, IX, XI, XX, V_NN
const HEH_ROWS: [[f64; 11]; 10] = [
    [0.65, -3.229, 0.635, -0.635, -0.074, -0.094, 0.094, 0.094, 0.094, 0.157, 1.6282],
    [0.7899, -3.161, 0.560, -0.560, -0.097, -0.106, 0.106, 0.106, 0.106, 0.144, 1.3399],
    [0.85, -3.129, 0.538, -0.538, -0.108, -0.111, 0.111, 0.111, 0.111, 0.137, 1.2451],
    [0.90, -3.101, 0.523, -0.523, -0.118, -0.114, 0.114, 0.114, 0.114, 0.131, 1.1759],
    [0.95, -3.073, 0.512, -0.512, -0.128, -0.117, 0.117, 0.117, 0.117, 0.124, 1.1141],
    [1.00, -3.045, 0.503, -0.503, -0.139, -0.119, 0.119, 0.119, 0.119, 0.117, 1.0584],
    [1.15, -2.962, 0.488, -0.488, -0.173, -0.122, 0.122, 0.122, 0.122, 0.095, 0.9203],
    [1.35, -2.857, 0.488, -0.488, -0.217, -0.115, 0.115, 0.115, 0.115, 0.066, 0.7840],
    [1.5, -2.785, 0.495, -0.495, -0.247, -0.104, 0.104, 0.104, 0.104, 0.047, 0.7056],
    [1.65, -2.721, 0.506, -0.506, -0.273, -0.090, 0.090, 0.090, 0.090, 0.032, 0.6414],
];

/// As printed; the identity term appears with three letters (`III`).
const LIH_TERMS: &str = "\
III -0.207 ZXIZ 0.012 XZIZ -0.013 YYXZ 0.008
IIIZ -0.094 IXZX -0.003 XIZX -0.002 XXXZ -0.008
IIZX -0.003 ZXZX -0.003 XZZX 0.002 YYXI 0.008
IIIX 0.003 IXIX 0.003 XIIX 0.002 XXXI -0.008
IIXX -0.001 ZXIX 0.003 XZIX -0.002 ZZZZ 0.084
IIYY 0.001 IXXX -0.009 XIXX -0.008 ZZXZ -0.009
IIZZ -0.212 ZXXX -0.009 XZXX 0.008 ZZXI -0.009
IIXZ 0.019 IXYY 0.009 XIYY 0.008 XIZZ -0.009
IIXI 0.019 ZXYY 0.009 XZYY -0.008 XZZZ 0.009
IIZI 0.359 YYIZ 0.032 ZIIZ 0.114 XIXZ 0.007
IZII 0.094 XXIZ -0.032 ZIZX -0.011 XZXZ -0.007
ZXII 0.003 YYZX -0.009 ZIIX 0.011 XIXI 0.007
IXII 0.003 XXZX 0.009 ZIXX -0.034 XZXI -0.007
XXII -0.001 YYIX 0.009 ZIYY 0.034 ZIZZ 0.060
YYII 0.001 XXIX -0.009 IZZZ -0.056 ZIXZ 0.011
ZZII -0.212 YYXX -0.031 IZXZ -0.013 ZIXI 0.011
XZII -0.019 XXXX 0.031 IZXI -0.013 IZZI 0.114
XIII 0.019 YYYY 0.031 IXZZ -0.002 IXZI -0.011
ZIII -0.359 XXYY -0.031 ZXZZ -0.002 ZXZI -0.011
IZIZ -0.122 ZZIZ 0.056 IXXZ 0.002 YYZI -0.034
IZZX 0.012 ZZZX 0.002 ZXXZ 0.002 XXZI 0.034
IZIX -0.012 ZZIX -0.002 IXXI 0.002 ZZZI -0.060
IZXX 0.032 ZZXX 0.003 ZXXI 0.002 XIZI -0.011
IZYY -0.032 ZZYY -0.003 YYZZ -0.003 XZZI 0.011
IXIZ 0.012 XIIZ 0.013 XXZZ 0.003 ZIZI -0.113";

/// Published measured rows: r, E_exact(θ_ref), E_VQE(θ_ref), E_VQE*(θ_ref),
/// E_exact(θ_min), E_VQE(θ_min), E_VQE*(θ_min), E_REM, E_REM*,
/// ΔE_VQE, ΔE_VQE*, ΔE_REM, ΔE_REM* (starred = readout mitigated).
#[allow(clippy::approx_constant)]
const H2_MEASURED: [[f64; 13]; 12] = [
    [0.45, -0.9875, -0.8524, -0.9446, -0.9984, -0.8604, -0.9546, -0.9955, -0.9975, 0.1380, 0.0438, 0.0029, 0.0010],
    [0.55, -1.0791, -0.9649, -1.0426, -1.0926, -0.9749, -1.0550, -1.0890, -1.0914, 0.1178, 0.0376, 0.0036, 0.0012],
    [0.65, -1.1130, -1.0162, -1.0820, -1.1299, -1.0287, -1.0974, -1.1254, -1.1284, 0.1013, 0.0325, 0.0045, 0.0015],
    [0.70, -1.1173, -1.0281, -1.0886, -1.1362, -1.0419, -1.1058, -1.1312, -1.1345, 0.0943, 0.0304, 0.0050, 0.0017],
    [0.7414, -1.1167, -1.0331, -1.0897, -1.1373, -1.0482, -1.1085, -1.1318, -1.1355, 0.0891, 0.0288, 0.0055, 0.0018],
    [0.80, -1.1109, -1.0345, -1.0861, -1.1341, -1.0516, -1.1073, -1.1280, -1.1321, 0.0825, 0.0268, 0.0062, 0.0020],
    [0.85, -1.1025, -1.0317, -1.0794, -1.1284, -1.0507, -1.1030, -1.1215, -1.1261, 0.0776, 0.0253, 0.0068, 0.0023],
    [1.00, -1.0661, -1.0093, -1.0473, -1.1012, -1.0352, -1.0793, -1.0919, -1.0981, 0.0660, 0.0219, 0.0092, 0.0030],
    [1.15, -1.0210, -0.9752, -1.0054, -1.0679, -1.0099, -1.0483, -1.0557, -1.0639, 0.0580, 0.0196, 0.0122, 0.0040],
    [1.35, -0.9572, -0.9227, -0.9449, -1.0251, -0.9733, -1.0072, -1.0078, -1.0195, 0.0517, 0.0179, 0.0172, 0.0056],
    [1.50, -0.9109, -0.8830, -0.9005, -0.9981, -0.9486, -0.9808, -0.9765, -0.9912, 0.0495, 0.0173, 0.0216, 0.0070],
    [1.65, -0.8678, -0.8452, -0.8590, -0.9771, -0.9283, -0.9599, -0.9508, -0.9688, 0.0489, 0.0172, 0.0263, 0.0084],
];

const HEH_MEASURED: [[f64; 13]; 9] = [
    [0.65, -2.7964, -2.7580, -2.7604, -2.8062, -2.7673, -2.7703, -2.8057, -2.8063, 0.0389, 0.0359, 0.0005, -0.0001],
    [0.7899, -2.8447, -2.8110, -2.8150, -2.8542, -2.8203, -2.8247, -2.8540, -2.8544, 0.0338, 0.0294, 0.0002, -0.0002],
    [0.85, -2.8517, -2.8195, -2.8225, -2.8608, -2.8278, -2.8305, -2.8600, -2.8597, 0.0330, 0.0302, 0.0008, 0.0010],
    [0.90, -2.8540, -2.8244, -2.8261, -2.8626, -2.8326, -2.8359, -2.8622, -2.8638, 0.0300, 0.0267, 0.0004, -0.0012],
    [0.95, -2.8542, -2.8253, -2.8267, -2.8622, -2.8324, -2.8353, -2.8614, -2.8629, 0.0298, 0.0269, 0.0008, -0.0007],
    [1.00, -2.8529, -2.8252, -2.8270, -2.8602, -2.8315, -2.8339, -2.8592, -2.8598, 0.0287, 0.0263, 0.0010, 0.0004],
    [1.15, -2.8445, -2.8181, -2.8206, -2.8495, -2.8233, -2.8261, -2.8497, -2.8500, 0.0262, 0.0235, -0.0002, -0.0004],
    [1.35, -2.8314, -2.8076, -2.8093, -2.8339, -2.8095, -2.8120, -2.8333, -2.8341, 0.0243, 0.0219, 0.0005, -0.0003],
    [1.5, -2.8234, -2.8008, -2.8013, -2.8247, -2.8017, -2.8029, -2.8244, -2.8251, 0.0230, 0.0218, 0.0003, -0.0004],
];

const LIH_MEASURED: [[f64; 13]; 1] =
    [[1.5949, -7.8620, -7.6064, -7.6071, -7.8787, -7.6071, -7.6102, -7.8627, -7.8651, 0.2717, 0.2686, 0.0160, 0.0136]];

/// Optimal angles reported for the hardware runs: H₂ (uncorrected, readout
/// mitigated), HeH⁺ UCCSD, LiH hardware-efficient.
pub const H2_OPTIMAL_THETA: [[f64; 3]; 12] = [
    [0.45, -0.1186, -0.1272],
    [0.55, -0.1437, -0.1540],
    [0.65, -0.1737, -0.1861],
    [0.70, -0.1906, -0.2042],
    [0.7414, -0.2056, -0.2202],
    [0.80, -0.2284, -0.2445],
    [0.85, -0.2495, -0.2669],
    [1.00, -0.3220, -0.3438],
    [1.15, -0.4106, -0.4372],
    [1.35, -0.5553, -0.5876],
    [1.50, -0.6802, -0.7153],
    [1.65, -0.8121, -0.8477],
];

pub const HEH_OPTIMAL_THETA: [[f64; 4]; 10] = [
    [0.65, 0.011, 0.008, -0.061],
    [0.7899, 0.014, 0.016, -0.067],
    [0.85, 0.013, 0.010, -0.065],
    [0.90, 0.012, 0.013, -0.063],
    [0.95, 0.017, 0.015, -0.065],
    [1.00, 0.021, 0.021, -0.063],
    [1.15, 0.017, 0.017, -0.053],
    [1.35, 0.012, 0.012, -0.036],
    [1.5, 0.009, 0.003, -0.025],
    [1.65, 0.008, 0.005, -0.018],
];

pub const LIH_OPTIMAL_THETA: [f64; 12] =
    [3.8987, -6.5469, -1.2442, -5.0653, 1.5509, 2.0379, 3.1205, -4.7523, 2.3617, 6.2591, -5.9394, 3.2559];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReferenceEnergies {
    /// Energy of the Hartree-Fock reference state.
    pub e_exact_ref: f64,
    /// Exact minimum over the ansatz.
    pub e_exact_min: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Geometry {
    pub r: f64,
    pub hamiltonian: PauliHamiltonian,
    pub reference: Option<ReferenceEnergies>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoleculeDataset {
    pub name: String,
    pub n_qubits: usize,
    /// Orbitals and electrons of the active space (spatial, alpha, beta).
    pub active_space: (usize, usize, usize),
    /// Bond length of the equilibrium benchmark row.
    pub equilibrium: f64,
    pub geometries: Vec<Geometry>,
}

impl MoleculeDataset {
    pub fn geometry(&self, r: f64) -> Result<&Geometry> {
        self.geometries.iter().find(|g| (g.r - r).abs() < R_TOL).ok_or(Error::UnknownGeometry(r))
    }

    pub fn bond_lengths(&self) -> Vec<f64> {
        self.geometries.iter().map(|g| g.r).collect()
    }
}

/// One row of the published measurement tables (starred = readout mitigated).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasuredRow {
    pub r: f64,
    pub e_exact_ref: f64,
    pub e_vqe_ref: f64,
    pub e_vqe_ref_star: f64,
    pub e_exact_min: f64,
    pub e_vqe_min: f64,
    pub e_vqe_min_star: f64,
    pub e_rem: f64,
    pub e_rem_star: f64,
    pub err_vqe: f64,
    pub err_vqe_star: f64,
    pub err_rem: f64,
    pub err_rem_star: f64,
}

impl MeasuredRow {
    fn from_array(a: &[f64; 13]) -> Self {
        MeasuredRow {
            r: a[0],
            e_exact_ref: a[1],
            e_vqe_ref: a[2],
            e_vqe_ref_star: a[3],
            e_exact_min: a[4],
            e_vqe_min: a[5],
            e_vqe_min_star: a[6],
            e_rem: a[7],
            e_rem_star: a[8],
            err_vqe: a[9],
            err_vqe_star: a[10],
            err_rem: a[11],
            err_rem_star: a[12],
        }
    }
}

/// Equilibrium summary row: exact, readout-mitigated VQE, REM-corrected.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub molecule: &'static str,
    pub hardware: bool,
    pub e_exact_min: f64,
    pub e_vqe_min: f64,
    pub e_rem: f64,
    pub err_vqe: f64,
    pub err_rem: f64,
}

pub const SUMMARY: [SummaryRow; 5] = [
    SummaryRow {
        molecule: "h2",
        hardware: true,
        e_exact_min: -1.1373,
        e_vqe_min: -1.1085,
        e_rem: -1.1355,
        err_vqe: 0.0288,
        err_rem: 0.0018,
    },
    SummaryRow {
        molecule: "heh+",
        hardware: true,
        e_exact_min: -2.8542,
        e_vqe_min: -2.8247,
        e_rem: -2.8544,
        err_vqe: 0.0294,
        err_rem: -0.0002,
    },
    SummaryRow {
        molecule: "lih",
        hardware: true,
        e_exact_min: -7.8787,
        e_vqe_min: -7.6071,
        e_rem: -7.8651,
        err_vqe: 0.2686,
        err_rem: 0.0136,
    },
    SummaryRow {
        molecule: "lih",
        hardware: false,
        e_exact_min: -7.8811,
        e_vqe_min: -7.3599,
        e_rem: -7.8705,
        err_vqe: 0.5213,
        err_rem: 0.0106,
    },
    SummaryRow {
        molecule: "beh2",
        hardware: false,
        e_exact_min: -15.5895,
        e_vqe_min: -13.9873,
        e_rem: -15.5632,
        err_vqe: 1.6021,
        err_rem: 0.0263,
    },
];

fn canonical(name: &str) -> Result<&'static str> {
    match name.to_ascii_lowercase().as_str() {
        "h2" => Ok("h2"),
        "heh+" | "hehp" | "heh" => Ok("heh+"),
        "lih" => Ok("lih"),
        "beh2" => Err(Error::UnknownMolecule("beh2 has no embedded Hamiltonian; supply one with a Hamiltonian file".into())),
        other => Err(Error::UnknownMolecule(format!("{other:?} (expected h2, heh+ or lih)"))),
    }
}

fn lih_hamiltonian() -> PauliHamiltonian {
    let tokens: Vec<&str> = LIH_TERMS.split_whitespace().collect();
    let terms: Vec<(String, f64)> = tokens
        .chunks(2)
        .map(|p| {
            let label = if p[0] == "III" { "IIII".to_string() } else { p[0].to_string() };
            (label, p[1].parse().expect("embedded coefficient"))
        })
        .collect();
    let refs: Vec<(&str, f64)> = terms.iter().map(|(l, c)| (l.as_str(), *c)).collect();
    PauliHamiltonian::from_labels(4, &refs, LIH_FROZEN_CORE + LIH_NUCLEAR_REPULSION).expect("embedded LiH terms")
}

fn reference_rows(table: &[[f64; 13]]) -> impl Fn(f64) -> Option<ReferenceEnergies> + '_ {
    move |r| {
        table
            .iter()
            .find(|row| (row[0] - r).abs() < R_TOL)
            .map(|row| ReferenceEnergies { e_exact_ref: row[1], e_exact_min: row[4] })
    }
}

/// Embedded dataset by molecule id (`h2`, `heh+`, `lih`).
pub fn builtin(name: &str) -> Result<MoleculeDataset> {
    let ds = match canonical(name)? {
        "h2" => {
            let refs = reference_rows(&H2_MEASURED);
            let geometries = H2_ROWS
                .iter()
                .map(|row| {
                    let terms: Vec<(&str, f64)> = H2_LABELS.iter().copied().zip(row[1..6].iter().copied()).collect();
                    Geometry {
                        r: row[0],
                        hamiltonian: PauliHamiltonian::from_labels(2, &terms, row[6]).expect("embedded H2 terms"),
                        reference: refs(row[0]),
                    }
                })
                .collect();
            MoleculeDataset { name: "h2".into(), n_qubits: 2, active_space: (2, 1, 1), equilibrium: 0.7414, geometries }
        }
        "heh+" => {
            let refs = reference_rows(&HEH_MEASURED);
            let geometries = HEH_ROWS
                .iter()
                .map(|row| {
                    let terms: Vec<(&str, f64)> = HEH_LABELS.iter().copied().zip(row[1..10].iter().copied()).collect();
                    Geometry {
                        r: row[0],
                        hamiltonian: PauliHamiltonian::from_labels(2, &terms, row[10]).expect("embedded HeH+ terms"),
                        reference: refs(row[0]),
                    }
                })
                .collect();
            MoleculeDataset { name: "heh+".into(), n_qubits: 2, active_space: (2, 1, 1), equilibrium: 0.7899, geometries }
        }
        _ => MoleculeDataset {
            name: "lih".into(),
            n_qubits: 4,
            active_space: (3, 1, 1),
            equilibrium: LIH_BOND_LENGTH,
            geometries: vec![Geometry {
                r: LIH_BOND_LENGTH,
                hamiltonian: lih_hamiltonian(),
                reference: reference_rows(&LIH_MEASURED)(LIH_BOND_LENGTH),
            }],
        },
    };
    Ok(ds)
}

/// Published measured rows for a molecule.
pub fn measured_rows(name: &str) -> Result<Vec<MeasuredRow>> {
    let table: &[[f64; 13]] = match canonical(name)? {
        "h2" => &H2_MEASURED,
        "heh+" => &HEH_MEASURED,
        _ => &LIH_MEASURED,
    };
    Ok(table.iter().map(MeasuredRow::from_array).collect())
}

pub fn reference_energy(ds: &MoleculeDataset, r: f64) -> Result<ReferenceEnergies> {
    ds.geometry(r)?.reference.ok_or(Error::UnknownGeometry(r))
}

/// Reads a Hamiltonian in the text format of [`PauliHamiltonian::parse_text`].
pub fn load(path: &Path) -> Result<PauliHamiltonian> {
    PauliHamiltonian::parse_text(&std::fs::read_to_string(path)?)
}

pub fn dump(h: &PauliHamiltonian, path: &Path) -> Result<()> {
    std::fs::write(path, h.to_text())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_sizes() {
        assert_eq!(builtin("h2").unwrap().geometries.len(), 12);
        assert_eq!(builtin("heh+").unwrap().geometries.len(), 10);
        assert_eq!(builtin("LiH").unwrap().geometries.len(), 1);
        assert_eq!(lih_hamiltonian().terms().len(), 100);
    }

    #[test]
    fn spot_values() {
        let h2 = builtin("h2").unwrap();
        let g = &h2.geometries[0];
        assert_eq!((g.r, g.hamiltonian.coefficient("II"), g.hamiltonian.offset()), (0.45, Some(-0.908), 1.1759));
        let heh = builtin("heh+").unwrap();
        assert_eq!(heh.geometries[0].hamiltonian.coefficient("XX"), Some(0.157));
        assert_eq!(heh.geometries[0].hamiltonian.offset(), 1.6282);
        let lih = builtin("lih").unwrap();
        assert!((lih.geometries[0].hamiltonian.offset() - -6.80295276).abs() < 1e-12);
        assert_eq!(lih.geometries[0].hamiltonian.coefficient("IIII"), Some(-0.207));
    }

    #[test]
    fn references() {
        let h2 = builtin("h2").unwrap();
        assert_eq!(reference_energy(&h2, 1.65).unwrap(), ReferenceEnergies { e_exact_ref: -0.8678, e_exact_min: -0.9771 });
        let heh = builtin("heh+").unwrap();
        assert_eq!(reference_energy(&heh, 1.35).unwrap(), ReferenceEnergies { e_exact_ref: -2.8314, e_exact_min: -2.8339 });
        assert!(reference_energy(&heh, 1.65).is_err());
        assert!(matches!(reference_energy(&heh, 2.0), Err(Error::UnknownGeometry(_))));
        let lih = builtin("lih").unwrap();
        assert_eq!(reference_energy(&lih, 1.5949).unwrap(), ReferenceEnergies { e_exact_ref: -7.8620, e_exact_min: -7.8787 });
    }

    #[test]
    fn dataset_invariants() {
        for name in ["h2", "heh+", "lih"] {
            let ds = builtin(name).unwrap();
            let rs = ds.bond_lengths();
            assert!(rs.windows(2).all(|w| w[0] < w[1]));
            assert!(ds.geometries.iter().all(|g| g.hamiltonian.n_qubits() == ds.n_qubits));
            if name != "lih" {
                assert!(ds.geometries.iter().all(|g| g.hamiltonian.offset() > 0.0));
            }
        }
    }

    #[test]
    fn unknown_molecules() {
        let err = builtin("beh2").unwrap_err().to_string();
        assert!(err.contains("Hamiltonian file"), "{err}");
        assert!(builtin("n2").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lih.txt");
        let h = lih_hamiltonian();
        dump(&h, &path).unwrap();
        assert_eq!(load(&path).unwrap(), h);
    }
}
