//! Parity-mapped fermionic operators with two-qubit symmetry reduction.
//!
//! Spin orbitals are ordered alpha block first, then beta block. After the
//! parity mapping, qubit `norb − 1` carries the alpha-number parity and
//! qubit `2·norb − 1` the total parity; both are removed.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::pauli::{Pauli, PauliString};

type PauliSum = BTreeMap<PauliString, Complex64>;

const DROP: f64 = 1e-12;

fn string(n: usize, ops: &[(usize, Pauli)]) -> PauliString {
    PauliString::from_ops(n, ops).expect("qubit index in range")
}

fn mul(a: &PauliSum, b: &PauliSum) -> PauliSum {
    let mut out = PauliSum::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let (phase, p) = pa.mul(pb);
            *out.entry(p).or_default() += phase * ca * cb;
        }
    }
    out.retain(|_, c| c.norm() > DROP);
    out
}

fn adjoint(a: &PauliSum) -> PauliSum {
    a.iter().map(|(p, c)| (*p, c.conj())).collect()
}

/// `a†_j = ½ (X_j Z_{j−1} − i Y_j) ⊗ X_{j+1} … X_{N−1}`.
fn creation(j: usize, n: usize) -> PauliSum {
    let mut tail: Vec<(usize, Pauli)> = (j + 1..n).map(|q| (q, Pauli::X)).collect();
    let mut xs = tail.clone();
    xs.push((j, Pauli::X));
    if j > 0 {
        xs.push((j - 1, Pauli::Z));
    }
    tail.push((j, Pauli::Y));
    let mut s = PauliSum::new();
    s.insert(string(n, &xs), Complex64::new(0.5, 0.0));
    s.insert(string(n, &tail), Complex64::new(0.0, -0.5));
    s
}

/// One excitation: creation indices applied after annihilation indices
/// (`a†_{c0} a†_{c1} … a_{a0} a_{a1} …`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Excitation {
    pub create: Vec<usize>,
    pub annihilate: Vec<usize>,
}

/// UCCSD excitation list: alpha singles, beta singles, alpha-alpha,
/// beta-beta, then alpha-beta doubles.
pub fn uccsd_excitations(norb: usize, n_alpha: usize, n_beta: usize) -> Vec<Excitation> {
    let occ_a: Vec<usize> = (0..n_alpha).collect();
    let vir_a: Vec<usize> = (n_alpha..norb).collect();
    let occ_b: Vec<usize> = (norb..norb + n_beta).collect();
    let vir_b: Vec<usize> = (norb + n_beta..2 * norb).collect();
    let mut out = Vec::new();
    for (occ, vir) in [(&occ_a, &vir_a), (&occ_b, &vir_b)] {
        for &o in occ {
            for &v in vir {
                out.push(Excitation { create: vec![v], annihilate: vec![o] });
            }
        }
    }
    let pairs = |s: &[usize]| -> Vec<(usize, usize)> {
        let mut p = Vec::new();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                p.push((s[i], s[j]));
            }
        }
        p
    };
    for (occ, vir) in [(&occ_a, &vir_a), (&occ_b, &vir_b)] {
        for (o1, o2) in pairs(occ) {
            for (v1, v2) in pairs(vir) {
                out.push(Excitation { create: vec![v1, v2], annihilate: vec![o1, o2] });
            }
        }
    }
    for &oa in &occ_a {
        for &ob in &occ_b {
            for &va in &vir_a {
                for &vb in &vir_b {
                    out.push(Excitation { create: vec![va, vb], annihilate: vec![oa, ob] });
                }
            }
        }
    }
    out
}

/// Hermitian generator `−i (T − T†) = Σ c P` of one excitation on the
/// reduced `2·norb − 2` qubits.
pub fn excitation_generator(ex: &Excitation, norb: usize, n_alpha: usize, n_beta: usize) -> Vec<(PauliString, f64)> {
    let n = 2 * norb;
    let mut t = PauliSum::new();
    t.insert(PauliString::identity(n), Complex64::new(1.0, 0.0));
    for &c in &ex.create {
        t = mul(&t, &creation(c, n));
    }
    for &a in &ex.annihilate {
        t = mul(&t, &adjoint(&creation(a, n)));
    }
    let t_dag = adjoint(&t);
    let mut gen = PauliSum::new();
    for (p, c) in &t {
        *gen.entry(*p).or_default() += Complex64::new(0.0, -1.0) * c;
    }
    for (p, c) in &t_dag {
        *gen.entry(*p).or_default() += Complex64::new(0.0, 1.0) * c;
    }
    let removed = removed_qubits(norb, n_alpha, n_beta);
    let mut reduced: BTreeMap<PauliString, f64> = BTreeMap::new();
    for (p, c) in gen {
        if c.norm() <= DROP {
            continue;
        }
        debug_assert!(c.im.abs() < 1e-12, "generator must be Hermitian");
        let (f, q) = p.taper(&removed).expect("excitations commute with the parity symmetries");
        *reduced.entry(q).or_default() += f * c.re;
    }
    // order by label for a stable circuit layout
    let mut terms: Vec<(PauliString, f64)> = reduced.into_iter().filter(|(_, c)| c.abs() > DROP).collect();
    terms.sort_by_key(|(p, _)| p.label());
    terms
}

fn removed_qubits(norb: usize, n_alpha: usize, n_beta: usize) -> [(usize, f64); 2] {
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    [(norb - 1, sign(n_alpha)), (2 * norb - 1, sign(n_alpha + n_beta))]
}

/// Hartree-Fock occupation after parity mapping and reduction, as a label
/// (leftmost character = highest qubit).
pub fn hf_parity_bitstring(norb: usize, n_alpha: usize, n_beta: usize) -> String {
    let n = 2 * norb;
    let occupied = |j: usize| j < n_alpha || (norb..norb + n_beta).contains(&j);
    let removed = removed_qubits(norb, n_alpha, n_beta);
    let mut parity = 0;
    let mut bits = Vec::new();
    for j in 0..n {
        parity ^= occupied(j) as u8;
        if removed.iter().all(|(r, _)| *r != j) {
            bits.push(parity);
        }
    }
    bits.iter().rev().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation() {
        let n = 4;
        for i in 0..n {
            for j in 0..n {
                let ai = adjoint(&creation(i, n));
                let aj_dag = creation(j, n);
                let mut anti = mul(&ai, &aj_dag);
                for (p, c) in mul(&aj_dag, &ai) {
                    *anti.entry(p).or_default() += c;
                }
                anti.retain(|_, c| c.norm() > 1e-12);
                if i == j {
                    assert_eq!(anti.len(), 1);
                    let (p, c) = anti.iter().next().unwrap();
                    assert!(p.is_identity() && (c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
                } else {
                    assert!(anti.is_empty(), "{{a_{i}, a†_{j}}} != 0");
                }
            }
        }
    }

    #[test]
    fn hf_bitstrings() {
        assert_eq!(hf_parity_bitstring(2, 1, 1), "01");
        assert_eq!(hf_parity_bitstring(3, 1, 1), "0011");
        assert_eq!(hf_parity_bitstring(4, 2, 2), "001001");
    }

    #[test]
    fn excitation_counts() {
        assert_eq!(uccsd_excitations(2, 1, 1).len(), 3);
        assert_eq!(uccsd_excitations(3, 1, 1).len(), 8);
        assert_eq!(uccsd_excitations(4, 2, 2).len(), 26);
    }

    #[test]
    fn two_orbital_generators() {
        let ex = uccsd_excitations(2, 1, 1);
        let g: Vec<Vec<(String, f64)>> =
            ex.iter().map(|e| excitation_generator(e, 2, 1, 1).into_iter().map(|(p, c)| (p.label(), c)).collect()).collect();
        // single alpha excitation acts on qubit 0 only, the double on both
        assert!(g[0].iter().all(|(l, _)| l.ends_with('Y')));
        assert!(g[2].iter().all(|(l, _)| !l.contains('I')));
        for gen in &g {
            assert!(!gen.is_empty());
        }
    }
}
