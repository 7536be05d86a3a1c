//! Dense-matrix reference transforms.
//!
//! These build the full `s x s` matrix entry by entry from the defining
//! formulas and share no code with the gate networks. They are ground truth
//! for tests and are far too slow for anything else.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bounds::phase_defect;
use crate::tolerance;
use crate::{Error, Result};

/// A square complex matrix stored row-major; entry `(c, a)` maps input `a`
/// to output `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    fn from_fn(l: u32, f: impl Fn(u64, u64) -> Complex64) -> Result<Self> {
        if l == 0 || l > tolerance::MAX_ORACLE_QUBITS {
            return Err(Error::Resource(format!(
                "dense oracle supports 1..={} qubits, got {l}",
                tolerance::MAX_ORACLE_QUBITS
            )));
        }
        let dim = 1usize << l;
        let mut entries = Vec::with_capacity(dim * dim);
        for c in 0..dim as u64 {
            for a in 0..dim as u64 {
                entries.push(f(c, a));
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, c: usize, a: usize) -> Complex64 {
        self.entries[c * self.dim + a]
    }

    pub fn row(&self, c: usize) -> &[Complex64] {
        &self.entries[c * self.dim..(c + 1) * self.dim]
    }

    /// `U x`.
    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(input.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|c| self.row(c).iter().zip(input).map(|(u, x)| u * x).sum())
            .collect()
    }

    /// Largest `|(U U†)_{ij} − δ_ij|`.
    pub fn unitarity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                let dot: Complex64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(x, y)| x * y.conj())
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).norm());
            }
        }
        worst
    }
}

/// `exp(2πi ac/s)/√s`.
pub fn dft_matrix(l: u32) -> Result<DenseUnitary> {
    let s = 1u64 << l.min(63);
    let norm = 1.0 / (s as f64).sqrt();
    DenseUnitary::from_fn(l, |c, a| {
        // reduce ac mod s first so the angle stays exact
        let k = (a * c) % s;
        Complex64::from_polar(norm, 2.0 * PI * k as f64 / s as f64)
    })
}

/// `exp(i(2π ac/s − Δ(a, c)))/√s` with `Δ` the phase dropped at degree `m`.
pub fn aqft_matrix(l: u32, m: u32) -> Result<DenseUnitary> {
    if m == 0 || m > l {
        return Err(Error::domain(format!(
            "degree m must be in 1..={l}, got {m}"
        )));
    }
    let s = 1u64 << l.min(63);
    let norm = 1.0 / (s as f64).sqrt();
    DenseUnitary::from_fn(l, |c, a| {
        let k = (a * c) % s;
        let angle = 2.0 * PI * k as f64 / s as f64 - phase_defect(a, c, l, m);
        Complex64::from_polar(norm, angle)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodicity::{make_periodic_state, peak_targets, PeriodicStateSpec};
    use crate::state::{bit_reverse, RegisterSize};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn one_qubit_dft_is_hadamard() {
        let h = dft_matrix(1).unwrap();
        let expected = [[1.0, 1.0], [1.0, -1.0]];
        for (c, row) in expected.iter().enumerate() {
            for (a, &x) in row.iter().enumerate() {
                let z = h.entry(c, a) - Complex64::new(x * FRAC_1_SQRT_2, 0.0);
                assert!(z.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn first_row_and_column_are_flat() {
        for l in 1..=6 {
            let u = dft_matrix(l).unwrap();
            let v = 1.0 / (u.dim() as f64).sqrt();
            for i in 0..u.dim() {
                assert_eq!(u.entry(0, i), Complex64::new(v, 0.0));
                assert_eq!(u.entry(i, 0), Complex64::new(v, 0.0));
            }
        }
    }

    #[test]
    fn size_limits() {
        assert!(matches!(dft_matrix(13), Err(Error::Resource(_))));
        assert!(matches!(dft_matrix(0), Err(Error::Resource(_))));
        assert!(matches!(aqft_matrix(4, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn matrices_are_unitary_with_flat_modulus() {
        for l in 1..=6 {
            assert!(dft_matrix(l).unwrap().unitarity_error() < 1e-10);
            for m in 1..=l {
                let u = aqft_matrix(l, m).unwrap();
                assert!(u.unitarity_error() < 1e-10, "L={l} m={m}");
                let v = 1.0 / (u.dim() as f64).sqrt();
                assert!(u.entries.iter().all(|z| (z.norm() - v).abs() < 1e-15));
            }
        }
    }

    #[test]
    fn full_degree_equals_dft() {
        for l in 1..=7 {
            let (d, a) = (dft_matrix(l).unwrap(), aqft_matrix(l, l).unwrap());
            for (x, y) in d.entries.iter().zip(&a.entries) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn degree_one_is_hadamard_transform() {
        for l in 1..=7u32 {
            let u = aqft_matrix(l, 1).unwrap();
            let v = 1.0 / (u.dim() as f64).sqrt();
            for c in 0..u.dim() {
                for a in 0..u.dim() {
                    // In register labelling b = bit_reverse(c) this is (-1)^{a·b}.
                    let sign = if (a & bit_reverse(c, l)).count_ones().is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    };
                    assert!((u.entry(c, a) - Complex64::new(sign * v, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn periodic_state_spectrum_peaks() {
        let size = RegisterSize::new(9).unwrap();
        let spec = PeriodicStateSpec::new(size, 10, 8).unwrap();
        let psi = make_periodic_state(&spec).unwrap();
        let out = dft_matrix(9).unwrap().apply(psi.amplitudes());
        let mags: Vec<f64> = out.iter().map(|z| z.norm()).collect();
        for &t in &peak_targets(size, 10) {
            let t = t as usize;
            // each target is a local maximum of |f̃(c)|
            let left = mags[(t + 511) % 512];
            let right = mags[(t + 1) % 512];
            assert!(mags[t] >= left && mags[t] >= right, "c={t}");
        }
    }
}
