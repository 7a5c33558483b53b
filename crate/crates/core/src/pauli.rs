//! Pauli strings, weighted Pauli-sum Hamiltonians and measurement grouping.
//!
//! Labels are written in tensor-product order: the leftmost character acts on
//! the highest qubit index and the rightmost on qubit 0. Basis-state indices
//! follow the same convention, so `"01"` is the state with qubit 0 set.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::sim::QuantumState;
use crate::{Error, Result};

/// Largest register for which dense matrices are built.
pub const DENSE_QUBIT_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauliChar(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// A tensor product of single-qubit Paulis stored in symplectic form.
///
/// Bit `q` of `x` / `z` describes qubit `q`; `Y` sets both bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 64, "Pauli strings support at most 64 qubits");
        PauliString { n, x: 0, z: 0 }
    }

    /// Builds a string from explicit `(qubit, Pauli)` placements.
    pub fn from_ops(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = PauliString::identity(n);
        for &(q, op) in ops {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
            }
            p.set(q, op);
        }
        Ok(p)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    pub fn get(&self, q: usize) -> Pauli {
        let xb = (self.x >> q) & 1 == 1;
        let zb = (self.z >> q) & 1 == 1;
        match (xb, zb) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn set(&mut self, q: usize, op: Pauli) {
        let (xb, zb) = op.bits();
        let m = 1u64 << q;
        self.x = if xb { self.x | m } else { self.x & !m };
        self.z = if zb { self.z | m } else { self.z & !m };
    }

    pub fn label(&self) -> String {
        (0..self.n).rev().map(|q| self.get(q).as_char()).collect()
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Phase `φ(k)` with `P|k⟩ = φ(k)|k ⊕ x⟩`.
    #[inline]
    pub fn phase_on(&self, k: usize) -> Complex64 {
        // i^{n_y} (-1)^{|k & z|} as one power of i
        let power = (self.y_count() + 2 * ((k as u64) & self.z).count_ones()) % 4;
        I_POWERS[power as usize]
    }

    /// Product `self · other` as `(phase, string)`.
    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        debug_assert_eq!(self.n, other.n);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let out = PauliString { n: self.n, x, z };
        // P = i^{y} X^x Z^z and Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
        let exponent =
            self.y_count() as i64 + other.y_count() as i64 + 2 * (self.z & other.x).count_ones() as i64 - out.y_count() as i64;
        (I_POWERS[exponent.rem_euclid(4) as usize], out)
    }

    /// True when each non-identity letter of `self` matches `basis` at that qubit.
    pub fn qubit_wise_compatible(&self, basis: &PauliString) -> bool {
        (0..self.n).all(|q| {
            let p = self.get(q);
            p == Pauli::I || p == basis.get(q) || (basis.get(q) == Pauli::I && p == Pauli::Z)
        })
    }

    /// Drops the listed qubits, which must carry `I` or `Z`; returns the
    /// product of the supplied `Z` eigenvalues and the reduced string.
    pub(crate) fn taper(&self, removed: &[(usize, f64)]) -> Option<(f64, PauliString)> {
        let mut factor = 1.0;
        let mut ops = Vec::with_capacity(self.n);
        for q in 0..self.n {
            let p = self.get(q);
            if let Some(&(_, eig)) = removed.iter().find(|(r, _)| *r == q) {
                match p {
                    Pauli::I => {}
                    Pauli::Z => factor *= eig,
                    _ => return None,
                }
            } else {
                ops.push(p);
            }
        }
        let mut out = PauliString::identity(ops.len());
        for (q, p) in ops.into_iter().enumerate() {
            out.set(q, p);
        }
        Some((factor, out))
    }
}

const I_POWERS: [Complex64; 4] =
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)];

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({})", self.label())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s, s.chars().count())
    }
}

/// Parses a label of exactly `n_qubits` characters.
pub fn parse_pauli(text: &str, n_qubits: usize) -> Result<PauliString> {
    let chars: Vec<char> = text.chars().collect();
    if let Some(&bad) = chars.iter().find(|c| !matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
        return Err(Error::InvalidPauliChar(bad));
    }
    if chars.len() != n_qubits {
        return Err(Error::LengthMismatch { expected: n_qubits, actual: chars.len() });
    }
    if n_qubits > 64 {
        return Err(Error::TooManyQubits { n: n_qubits, limit: 64 });
    }
    let mut p = PauliString::identity(n_qubits);
    for (pos, c) in chars.into_iter().enumerate() {
        p.set(n_qubits - 1 - pos, Pauli::from_char(c)?);
    }
    Ok(p)
}

/// Real-weighted sum of Pauli strings plus a classical energy offset.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliHamiltonian {
    n_qubits: usize,
    terms: Vec<(PauliString, f64)>,
    offset: f64,
}

impl PauliHamiltonian {
    /// Validates term lengths and merges duplicate labels by summation,
    /// keeping the order of first appearance.
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = (PauliString, f64)>, offset: f64) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Config("Hamiltonian needs at least one qubit".into()));
        }
        let mut merged: Vec<(PauliString, f64)> = Vec::new();
        for (p, c) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::LengthMismatch { expected: n_qubits, actual: p.n_qubits() });
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some(slot) => slot.1 += c,
                None => merged.push((p, c)),
            }
        }
        Ok(PauliHamiltonian { n_qubits, terms: merged, offset })
    }

    pub fn from_labels(n_qubits: usize, terms: &[(&str, f64)], offset: f64) -> Result<Self> {
        let parsed = terms.iter().map(|&(l, c)| parse_pauli(l, n_qubits).map(|p| (p, c))).collect::<Result<Vec<_>>>()?;
        Self::new(n_qubits, parsed, offset)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(PauliString, f64)] {
        &self.terms
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn coefficient(&self, label: &str) -> Option<f64> {
        let p = parse_pauli(label, self.n_qubits).ok()?;
        self.terms.iter().find(|(q, _)| *q == p).map(|&(_, c)| c)
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// `Σ cᵢ⟨Pᵢ⟩ + offset` for a pure or mixed state.
    pub fn expectation(&self, state: &QuantumState) -> Result<f64> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: state.dim() });
        }
        let mut acc = self.offset;
        for (p, c) in &self.terms {
            acc += c * pauli_expectation(p, state).re;
        }
        Ok(acc)
    }

    /// Energies of the computational basis states (diagonal of the matrix, offset included).
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|k| {
                self.offset + self.terms.iter().filter(|(p, _)| p.x_mask() == 0).map(|(p, c)| c * p.phase_on(k).re).sum::<f64>()
            })
            .collect()
    }

    pub fn to_dense_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > DENSE_QUBIT_LIMIT {
            return Err(Error::TooManyQubits { n: self.n_qubits, limit: DENSE_QUBIT_LIMIT });
        }
        let d = self.dim();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for k in 0..d {
            m[(k, k)] += Complex64::new(self.offset, 0.0);
        }
        for (p, c) in &self.terms {
            let x = p.x_mask() as usize;
            for k in 0..d {
                m[(k ^ x, k)] += p.phase_on(k) * *c;
            }
        }
        Ok(m)
    }

    /// Minimum eigenvalue (offset included) and its eigenvector.
    pub fn ground_state_energy(&self) -> Result<(f64, DVector<Complex64>)> {
        let m = self.to_dense_matrix()?;
        let eig = m.symmetric_eigen();
        let (idx, &e) = eig.eigenvalues.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty spectrum");
        Ok((e, eig.eigenvectors.column(idx).into_owned()))
    }

    /// Text form readable by [`PauliHamiltonian::parse_text`]; coefficients
    /// use the shortest representation that round-trips exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits={}\noffset={:?}\n", self.n_qubits, self.offset);
        for (p, c) in &self.terms {
            out.push_str(&format!("{} {:?}\n", p.label(), c));
        }
        out
    }

    /// Parses the line-oriented Hamiltonian format: `#` comments,
    /// `qubits=<n>`, `offset=<real>` and `<label> <coefficient>` lines.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n_qubits: Option<usize> = None;
        let mut offset = 0.0;
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse { line: line_no, message };
            if let Some((key, value)) = line.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "qubits" => {
                        let n: usize = value.parse().map_err(|_| perr(format!("bad qubit count {value:?}")))?;
                        if n == 0 || n > 64 {
                            return Err(perr(format!("qubit count {n} out of range")));
                        }
                        n_qubits = Some(n);
                    }
                    "offset" => {
                        offset = value.parse().map_err(|_| perr(format!("bad offset {value:?}")))?;
                    }
                    other => return Err(perr(format!("unknown header {other:?}"))),
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(label), Some(coef), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(perr(format!("expected `<label> <coefficient>`, got {line:?}")));
            };
            let n = n_qubits.ok_or_else(|| perr("term before `qubits=` header".into()))?;
            let p = parse_pauli(label, n).map_err(|e| perr(e.to_string()))?;
            let c: f64 = coef.parse().map_err(|_| perr(format!("bad coefficient {coef:?}")))?;
            terms.push((p, c));
        }
        let n = n_qubits.ok_or(Error::Parse { line: 0, message: "missing `qubits=` header".into() })?;
        if terms.is_empty() {
            return Err(Error::Parse { line: 0, message: "no terms".into() });
        }
        Self::new(n, terms, offset)
    }
}

/// `⟨P⟩` on a pure or mixed state.
pub fn pauli_expectation(p: &PauliString, state: &QuantumState) -> Complex64 {
    let x = p.x_mask() as usize;
    match state {
        QuantumState::Pure(amps) => amps.iter().enumerate().map(|(k, a)| amps[k ^ x].conj() * p.phase_on(k) * a).sum(),
        QuantumState::Mixed { dim, data } => (0..*dim).map(|a| p.phase_on(a ^ x) * data[(a ^ x) * dim + a]).sum(),
    }
}

/// Expands a dense `2^n × 2^n` operator in the Pauli basis.
pub fn decompose_dense(m: &DMatrix<Complex64>, n: usize) -> Result<Vec<(PauliString, Complex64)>> {
    let d = 1usize << n;
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: m.nrows() });
    }
    let mut out = Vec::new();
    for x in 0..d as u64 {
        for z in 0..d as u64 {
            let p = PauliString { n, x, z };
            // Tr(P M) / d
            let tr: Complex64 = (0..d).map(|k| p.phase_on(k) * m[(k, k ^ x as usize)]).sum::<Complex64>() / d as f64;
            if tr.norm() > 1e-14 {
                out.push((p, tr));
            }
        }
    }
    Ok(out)
}

/// Terms that share one measurement setting.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementGroup {
    /// One of `Z`, `X`, `Y` per qubit; idle slots are `Z`.
    pub basis: PauliString,
    /// Indices into [`PauliHamiltonian::terms`].
    pub members: Vec<usize>,
}

/// Greedy first-fit qubit-wise commuting grouping in term order.
pub fn group_terms(h: &PauliHamiltonian) -> Vec<MeasurementGroup> {
    let mut groups: Vec<MeasurementGroup> = Vec::new();
    for (idx, (p, _)) in h.terms().iter().enumerate() {
        let slot = groups.iter_mut().find(|g| {
            (0..p.n_qubits()).all(|q| {
                let (a, b) = (p.get(q), g.basis.get(q));
                a == Pauli::I || b == Pauli::I || a == b
            })
        });
        match slot {
            Some(g) => {
                for q in 0..p.n_qubits() {
                    if g.basis.get(q) == Pauli::I {
                        g.basis.set(q, p.get(q));
                    }
                }
                g.members.push(idx);
            }
            None => groups.push(MeasurementGroup { basis: *p, members: vec![idx] }),
        }
    }
    for g in &mut groups {
        for q in 0..g.basis.n_qubits() {
            if g.basis.get(q) == Pauli::I {
                g.basis.set(q, Pauli::Z);
            }
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2_equilibrium() -> PauliHamiltonian {
        PauliHamiltonian::from_labels(2, &[("II", -1.054), ("IZ", 0.394), ("ZI", -0.394), ("ZZ", -0.011), ("XX", 0.181)], 0.7138)
            .unwrap()
    }

    #[test]
    fn parse_convention_and_errors() {
        let p = parse_pauli("IZ", 2).unwrap();
        assert_eq!(p.get(0), Pauli::Z);
        assert_eq!(p.get(1), Pauli::I);
        assert!(parse_pauli("XX", 2).is_ok());
        assert!(matches!(parse_pauli("AB", 2), Err(Error::InvalidPauliChar('A'))));
        assert!(matches!(parse_pauli("XXX", 2), Err(Error::LengthMismatch { .. })));
        assert_eq!(parse_pauli("XYZI", 4).unwrap().label(), "XYZI");
    }

    #[test]
    fn multiplication_phases() {
        let x: PauliString = "X".parse().unwrap();
        let y: PauliString = "Y".parse().unwrap();
        let z: PauliString = "Z".parse().unwrap();
        assert_eq!(x.mul(&y), (Complex64::new(0.0, 1.0), z));
        assert_eq!(y.mul(&x), (Complex64::new(0.0, -1.0), z));
        assert_eq!(z.mul(&x), (Complex64::new(0.0, 1.0), y));
        let (ph, id) = y.mul(&y);
        assert_eq!(ph, Complex64::new(1.0, 0.0));
        assert!(id.is_identity());
    }

    #[test]
    fn identity_term_expectation_is_coefficient_plus_offset() {
        let h = PauliHamiltonian::from_labels(2, &[("II", -0.5)], 0.25).unwrap();
        let s = QuantumState::basis(2, 3);
        assert!((h.expectation(&s).unwrap() - (-0.25)).abs() < 1e-15);
        let wrong = QuantumState::basis(3, 0);
        assert!(matches!(h.expectation(&wrong), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn hf_energy_h2_equilibrium() {
        // exact on the printed coefficients: -1.054 - 0.394 - 0.394 + 0.011 + 0.7138
        let e = h2_equilibrium().expectation(&QuantumState::basis(2, 0b01)).unwrap();
        assert!((e - (-1.1172)).abs() < 1e-12);
        // published reference -1.1167, difference within printed-coefficient rounding
        assert!((e - (-1.1167)).abs() <= 5.0e-4 + 1e-12);
    }

    #[test]
    fn dense_matrices() {
        let z = PauliHamiltonian::from_labels(1, &[("Z", 1.0)], 0.0).unwrap();
        let m = z.to_dense_matrix().unwrap();
        assert_eq!(m[(0, 0)].re, 1.0);
        assert_eq!(m[(1, 1)].re, -1.0);
        let xx = PauliHamiltonian::from_labels(2, &[("XX", 1.0)], 0.0).unwrap();
        let m = xx.to_dense_matrix().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r + c == 3 { 1.0 } else { 0.0 };
                assert_eq!(m[(r, c)], Complex64::new(want, 0.0));
            }
        }
        let big = PauliHamiltonian::new(13, [(PauliString::identity(13), 1.0)], 0.0).unwrap();
        assert!(matches!(big.to_dense_matrix(), Err(Error::TooManyQubits { .. })));
    }

    #[test]
    fn ground_state_h2_equilibrium() {
        let (e, v) = h2_equilibrium().ground_state_energy().unwrap();
        // 2x2 block {|01>,|10>}: mean -1.043, half-gap 0.788, coupling 0.181
        let block = -1.043 - (0.788f64.powi(2) + 0.181f64.powi(2)).sqrt() + 0.7138;
        assert!((e - block).abs() < 1e-12);
        assert!((e - (-1.1373)).abs() < 5e-4);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duplicates_merge() {
        let h = PauliHamiltonian::from_labels(2, &[("ZZ", 0.25), ("XX", 1.0), ("ZZ", 0.5)], 0.0).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.coefficient("ZZ"), Some(0.75));
        assert_eq!(h.terms()[0].0.label(), "ZZ");
    }

    #[test]
    fn grouping_h2_and_heh() {
        let g = group_terms(&h2_equilibrium());
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].basis.label(), "ZZ");
        assert_eq!(g[0].members, vec![0, 1, 2, 3]);
        assert_eq!(g[1].basis.label(), "XX");
        assert_eq!(g[1].members, vec![4]);

        let labels = ["II", "IZ", "ZI", "ZZ", "ZX", "XZ", "IX", "XI", "XX"];
        let terms: Vec<(&str, f64)> = labels.iter().map(|&l| (l, 0.1)).collect();
        let heh = PauliHamiltonian::from_labels(2, &terms, 0.0).unwrap();
        let g = group_terms(&heh);
        let bases: Vec<String> = g.iter().map(|g| g.basis.label()).collect();
        assert_eq!(bases, ["ZZ", "ZX", "XZ", "XX"]);
        for grp in &g {
            for &m in &grp.members {
                assert!(heh.terms()[m].0.qubit_wise_compatible(&grp.basis));
            }
        }

        let single = PauliHamiltonian::from_labels(3, &[("XYZ", 1.0)], 0.0).unwrap();
        assert_eq!(group_terms(&single).len(), 1);
    }

    #[test]
    fn text_format_round_trip() {
        let h = h2_equilibrium();
        let back = PauliHamiltonian::parse_text(&h.to_text()).unwrap();
        assert_eq!(back, h);
        let err = PauliHamiltonian::parse_text("qubits=2\nII 1.0\nZQ 2.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(PauliHamiltonian::parse_text("qubits=2\noffset=1.0\n").is_err());
    }
}
