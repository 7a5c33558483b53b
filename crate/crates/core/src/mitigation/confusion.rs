use std::fmt::Write as _;
use std::path::Path;

use crate::rng::derive_seed;
use crate::sim::{sample_distribution, Counts};
use crate::{Error, Result};

const COLUMN_TOL: f64 = 1e-9;

/// Column-stochastic readout matrix: `get(j, i)` is the probability of
/// reading outcome `j` when basis state `i` was prepared.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfusionMatrix {
    n_qubits: usize,
    entries: Vec<f64>,
    uncertainty: Option<Vec<f64>>,
}

/// Outcome order `00, 01, 10, 11` (rows measured, columns prepared), in percent.
const FIGURE_S2: [[f64; 4]; 4] = [[96.8, 5.9, 5.9, 0.4], [1.1, 92.1, 0.1, 5.6], [2.0, 0.1, 93.0, 5.7], [0.0, 1.9, 1.1, 88.4]];

const FIGURE_S2_UNCERTAINTY: [[f64; 4]; 4] =
    [[0.21, 0.59, 0.67, 0.08], [0.12, 0.57, 0.03, 0.56], [0.15, 0.04, 0.69, 0.58], [0.01, 0.17, 0.13, 0.86]];

impl ConfusionMatrix {
    /// Builds from row-major entries (`entries[j * dim + i] = P(j | i)`).
    pub fn new(n_qubits: usize, entries: Vec<f64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, actual: entries.len() });
        }
        if let Some(v) = entries.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidProbability(format!("confusion entry {v} outside [0, 1]")));
        }
        for i in 0..dim {
            let s: f64 = (0..dim).map(|j| entries[j * dim + i]).sum();
            if (s - 1.0).abs() > COLUMN_TOL {
                return Err(Error::InvalidProbability(format!("column {i} sums to {s}")));
            }
        }
        Ok(ConfusionMatrix { n_qubits, entries, uncertainty: None })
    }

    pub fn with_uncertainty(mut self, sigma: Vec<f64>) -> Result<Self> {
        if sigma.len() != self.entries.len() {
            return Err(Error::DimensionMismatch { expected: self.entries.len(), actual: sigma.len() });
        }
        self.uncertainty = Some(sigma);
        Ok(self)
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        ConfusionMatrix { n_qubits, entries, uncertainty: None }
    }

    /// Every outcome equally likely regardless of the prepared state.
    pub fn uniform(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        ConfusionMatrix { n_qubits, entries: vec![1.0 / dim as f64; dim * dim], uncertainty: None }
    }

    /// Two-qubit hardware calibration, columns renormalized to sum to one
    /// (the printed percentages are rounded and sum to 99.9–100.1).
    pub fn figure_s2() -> Self {
        let mut entries = vec![0.0; 16];
        for i in 0..4 {
            let total: f64 = (0..4).map(|j| FIGURE_S2[j][i]).sum();
            for j in 0..4 {
                entries[j * 4 + i] = FIGURE_S2[j][i] / total;
            }
        }
        let sigma = FIGURE_S2_UNCERTAINTY.iter().flatten().map(|s| s / 100.0).collect();
        ConfusionMatrix { n_qubits: 2, entries, uncertainty: Some(sigma) }
    }

    /// Tensor product of independent single-qubit flip channels
    /// (`p01[q]` = P(read 1 | prepared 0) on qubit `q`).
    pub fn independent(p01: &[f64], p10: &[f64]) -> Result<Self> {
        if p01.len() != p10.len() {
            return Err(Error::LengthMismatch { expected: p01.len(), actual: p10.len() });
        }
        let n = p01.len();
        let dim = 1usize << n;
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[j * dim + i] = (0..n)
                    .map(|q| match ((i >> q) & 1, (j >> q) & 1) {
                        (0, 0) => 1.0 - p01[q],
                        (0, _) => p01[q],
                        (_, 0) => p10[q],
                        _ => 1.0 - p10[q],
                    })
                    .product();
            }
        }
        Self::new(n, entries)
    }

    /// `self ⊗ low`: `self` acts on the high qubits, `low` on the low ones.
    /// Uncertainties are dropped.
    pub fn kron(&self, low: &ConfusionMatrix) -> Result<Self> {
        let n = self.n_qubits + low.n_qubits;
        if n > 12 {
            return Err(Error::TooManyQubits { n, limit: 12 });
        }
        let (dh, dl) = (self.dim(), low.dim());
        let d = dh * dl;
        let mut entries = vec![0.0; d * d];
        for j in 0..d {
            for i in 0..d {
                entries[j * d + i] = self.get(j / dl, i / dl) * low.get(j % dl, i % dl);
            }
        }
        Ok(ConfusionMatrix { n_qubits: n, entries, uncertainty: None })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, measured: usize, prepared: usize) -> f64 {
        self.entries[measured * self.dim() + prepared]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn uncertainty(&self) -> Option<&[f64]> {
        self.uncertainty.as_deref()
    }

    /// Outcome distribution for prepared state `i`.
    pub fn column(&self, prepared: usize) -> Vec<f64> {
        (0..self.dim()).map(|j| self.get(j, prepared)).collect()
    }

    /// `C · p`.
    pub fn apply(&self, probs: &[f64]) -> Result<Vec<f64>> {
        let d = self.dim();
        if probs.len() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: probs.len() });
        }
        Ok((0..d).map(|j| (0..d).map(|i| self.entries[j * d + i] * probs[i]).sum()).collect())
    }

    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = format!("# confusion n={}\n", self.n_qubits);
        let rows = |out: &mut String, v: &[f64]| {
            for j in 0..d {
                let line: Vec<String> = (0..d).map(|i| format!("{:.12}", v[j * d + i])).collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
        };
        rows(&mut out, &self.entries);
        if let Some(sigma) = &self.uncertainty {
            out.push_str("# uncertainty\n");
            rows(&mut out, sigma);
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty confusion file".into() })?;
        let n: usize = header
            .trim()
            .strip_prefix("# confusion n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse { line: 1, message: format!("expected `# confusion n=<qubits>`, got {header:?}") })?;
        let d = 1usize << n;
        let mut entries = Vec::with_capacity(d * d);
        let mut sigma = Vec::new();
        let mut in_sigma = false;
        for (idx, line) in lines {
            let line = line.trim();
            if line == "# uncertainty" {
                in_sigma = true;
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line: idx + 1, message: e.to_string() })?;
            if row.len() != d {
                return Err(Error::Parse { line: idx + 1, message: format!("expected {d} columns, got {}", row.len()) });
            }
            if in_sigma { &mut sigma } else { &mut entries }.extend(row);
        }
        let m = Self::new(n, entries)?;
        if in_sigma {
            m.with_uncertainty(sigma)
        } else {
            Ok(m)
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse_csv(&std::fs::read_to_string(path)?)
    }
}

/// Anything that can prepare a basis state and return measured counts.
pub trait ReadoutSampler: Sync {
    fn n_qubits(&self) -> usize;
    fn prepare_and_measure(&self, prepared: usize, shots: u64, seed: u64) -> Result<Counts>;
}

impl ReadoutSampler for ConfusionMatrix {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn prepare_and_measure(&self, prepared: usize, shots: u64, seed: u64) -> Result<Counts> {
        sample_distribution(&self.column(prepared), self.n_qubits, shots, seed)
    }
}

/// Estimates the confusion matrix by preparing every basis state
/// `repeats` times with `shots` shots each. Entries are repeat means,
/// uncertainties the (population) standard deviation over repeats.
pub fn calibrate_confusion(sampler: &dyn ReadoutSampler, shots: u64, repeats: usize, seed: u64) -> Result<ConfusionMatrix> {
    if shots == 0 || repeats == 0 {
        return Err(Error::Config("calibration needs positive shots and repeats".into()));
    }
    let n = sampler.n_qubits();
    let d = 1usize << n;
    let column = |i: usize| -> Result<(Vec<f64>, Vec<f64>)> {
        let mut sum = vec![0.0; d];
        let mut sq = vec![0.0; d];
        for r in 0..repeats {
            let s = derive_seed(derive_seed(seed, i as u64), r as u64);
            let p = sampler.prepare_and_measure(i, shots, s)?.distribution();
            for j in 0..d {
                sum[j] += p[j];
                sq[j] += p[j] * p[j];
            }
        }
        let k = repeats as f64;
        let mean: Vec<f64> = sum.iter().map(|s| s / k).collect();
        let std = sq.iter().zip(&mean).map(|(q, m)| (q / k - m * m).max(0.0).sqrt()).collect();
        Ok((mean, std))
    };
    #[cfg(feature = "parallel")]
    let cols: Vec<_> = {
        use rayon::prelude::*;
        (0..d).into_par_iter().map(column).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let cols: Vec<_> = (0..d).map(column).collect::<Result<_>>()?;

    let mut entries = vec![0.0; d * d];
    let mut sigma = vec![0.0; d * d];
    for (i, (mean, std)) in cols.iter().enumerate() {
        // renormalize away floating-point drift in the mean
        let total: f64 = mean.iter().sum();
        for j in 0..d {
            entries[j * d + i] = mean[j] / total;
            sigma[j * d + i] = std[j];
        }
    }
    ConfusionMatrix::new(n, entries)?.with_uncertainty(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_matches_independent_flips() {
        let a = ConfusionMatrix::independent(&[0.1], &[0.2]).unwrap();
        let b = ConfusionMatrix::independent(&[0.03], &[0.05]).unwrap();
        let both = ConfusionMatrix::independent(&[0.03, 0.1], &[0.05, 0.2]).unwrap();
        let k = a.kron(&b).unwrap();
        for (x, y) in k.entries().iter().zip(both.entries()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn figure_s2_is_column_stochastic() {
        let c = ConfusionMatrix::figure_s2();
        for i in 0..4 {
            assert!((c.column(i).iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        // column 0 printed sum is 99.9
        assert!((c.get(0, 0) - 96.8 / 99.9).abs() < 1e-15);
        assert!(ConfusionMatrix::new(2, c.entries().to_vec()).is_ok());
    }

    #[test]
    fn rejects_bad_columns() {
        assert!(ConfusionMatrix::new(1, vec![0.9, 0.0, 0.2, 1.0]).is_err());
        assert!(ConfusionMatrix::new(1, vec![1.1, 0.0, -0.1, 1.0]).is_err());
        assert!(ConfusionMatrix::new(1, vec![1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let c = ConfusionMatrix::figure_s2();
        let text = c.to_csv();
        assert!(text.starts_with("# confusion n=2\n"));
        let back = ConfusionMatrix::parse_csv(&text).unwrap();
        for (a, b) in back.entries().iter().zip(c.entries()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(back.uncertainty().is_some());
        assert!(ConfusionMatrix::parse_csv("1,0\n0,1\n").is_err());
        assert!(ConfusionMatrix::parse_csv("# confusion n=1\n1,0\n0,x\n").is_err());
    }

    #[test]
    fn independent_flips_factorize() {
        let c = ConfusionMatrix::independent(&[0.02, 0.05], &[0.1, 0.04]).unwrap();
        // prepared 00 -> measured 11: both qubits flip 0 -> 1
        assert!((c.get(0b11, 0b00) - 0.02 * 0.05).abs() < 1e-15);
        assert!((c.get(0b01, 0b10) - 0.02 * 0.04).abs() < 1e-15);
    }

    #[test]
    fn noiseless_calibration_is_identity() {
        let c = calibrate_confusion(&ConfusionMatrix::identity(2), 100, 3, 1).unwrap();
        assert_eq!(c.entries(), ConfusionMatrix::identity(2).entries());
        assert!(c.uncertainty().unwrap().iter().all(|&s| s == 0.0));
    }
}
