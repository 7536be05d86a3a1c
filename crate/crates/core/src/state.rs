//! The quantum register as a dense vector of complex amplitudes.
//!
//! Basis index `a` encodes the qubit values little-endian: qubit `i` is the
//! bit of significance `2^i`, so `a = Σ a_i 2^i`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::tolerance;
use crate::{Error, Result};

/// A 2x2 complex matrix, row-major: `u[row][col]`.
pub type Matrix2 = [[Complex64; 2]; 2];

/// The single-qubit gate `A`: `|0⟩ → (|0⟩+|1⟩)/√2`, `|1⟩ → (|0⟩−|1⟩)/√2`.
pub const HADAMARD: Matrix2 = [
    [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    ],
    [
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
    ],
];

/// Number of qubits `L` in a register; the dimension is `2^L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct RegisterSize(u32);

impl RegisterSize {
    pub fn new(qubits: u32) -> Result<Self> {
        if qubits == 0 || qubits > tolerance::MAX_QUBITS {
            return Err(Error::domain(format!(
                "register size must be in 1..={}, got {qubits}",
                tolerance::MAX_QUBITS
            )));
        }
        Ok(Self(qubits))
    }

    #[inline]
    pub fn qubits(self) -> u32 {
        self.0
    }

    /// `s = 2^L`.
    #[inline]
    pub fn dim(self) -> usize {
        1usize << self.0
    }

    pub(crate) fn check_qubit(self, qubit: usize) -> Result<()> {
        if qubit >= self.0 as usize {
            return Err(Error::domain(format!(
                "qubit {qubit} out of range for a {}-qubit register",
                self.0
            )));
        }
        Ok(())
    }
}

impl TryFrom<u32> for RegisterSize {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        Self::new(value)
    }
}

impl From<RegisterSize> for u32 {
    fn from(value: RegisterSize) -> Self {
        value.0
    }
}

/// Reverses the lowest `bits` bits of `index`.
#[inline]
pub fn bit_reverse(index: usize, bits: u32) -> usize {
    if bits == 0 {
        return 0;
    }
    index.reverse_bits() >> (usize::BITS - bits)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    size: RegisterSize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn zeroed(size: RegisterSize) -> Result<Self> {
        let mut amps = Vec::new();
        amps.try_reserve_exact(size.dim()).map_err(|e| {
            Error::Resource(format!("cannot allocate {} amplitudes: {e}", size.dim()))
        })?;
        amps.resize(size.dim(), Complex64::new(0.0, 0.0));
        Ok(Self { size, amps })
    }

    /// The computational basis state `|a⟩`.
    pub fn basis(size: RegisterSize, a: usize) -> Result<Self> {
        if a >= size.dim() {
            return Err(Error::domain(format!(
                "basis index {a} out of range for dimension {}",
                size.dim()
            )));
        }
        let mut state = Self::zeroed(size)?;
        state.amps[a] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Wraps raw amplitudes. The caller is responsible for normalization.
    pub fn from_amplitudes(size: RegisterSize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != size.dim() {
            return Err(Error::domain(format!(
                "expected {} amplitudes, got {}",
                size.dim(),
                amps.len()
            )));
        }
        Ok(Self { size, amps })
    }

    /// A Haar-like random normalized state (independent Gaussian components).
    pub fn random<R: Rng + ?Sized>(size: RegisterSize, rng: &mut R) -> Result<Self> {
        let mut state = Self::zeroed(size)?;
        for amp in &mut state.amps {
            *amp = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        let norm = state.norm_sqr().sqrt();
        state.amps.iter_mut().for_each(|a| *a /= norm);
        Ok(state)
    }

    #[inline]
    pub fn size(&self) -> RegisterSize {
        self.size
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    #[inline]
    pub fn amplitude(&self, a: usize) -> Complex64 {
        self.amps[a]
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Measurement distribution in the computational basis, indexed by `a`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies a 2x2 unitary to `qubit`.
    pub fn apply_single_qubit(&mut self, qubit: usize, u: &Matrix2) -> Result<()> {
        self.size.check_qubit(qubit)?;
        if !is_unitary(u) {
            return Err(Error::domain("single-qubit gate is not unitary"));
        }
        self.apply_single_qubit_unchecked(qubit, u);
        Ok(())
    }

    pub(crate) fn apply_single_qubit_unchecked(&mut self, qubit: usize, u: &Matrix2) {
        let stride = 1usize << qubit;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = u[0][0] * x0 + u[0][1] * x1;
                *a1 = u[1][0] * x0 + u[1][1] * x1;
            }
        }
    }

    /// Multiplies every amplitude whose bits `j` and `k` are both set by
    /// `exp(i theta)`.
    pub fn apply_controlled_phase(&mut self, j: usize, k: usize, theta: f64) -> Result<()> {
        self.size.check_qubit(j)?;
        self.size.check_qubit(k)?;
        if j == k {
            return Err(Error::domain(format!(
                "controlled phase needs two distinct qubits, got {j} twice"
            )));
        }
        self.apply_controlled_phase_unchecked(j, k, theta);
        Ok(())
    }

    pub(crate) fn apply_controlled_phase_unchecked(&mut self, j: usize, k: usize, theta: f64) {
        let mask = (1usize << j) | (1usize << k);
        let phase = Complex64::from_polar(1.0, theta);
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp *= phase;
            }
        }
    }

    /// Multiplies amplitudes with `qubit = 0` by `d0` and with `qubit = 1` by `d1`.
    pub(crate) fn apply_diagonal_unchecked(&mut self, qubit: usize, d0: Complex64, d1: Complex64) {
        let stride = 1usize << qubit;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            lo.iter_mut().for_each(|a| *a *= d0);
            hi.iter_mut().for_each(|a| *a *= d1);
        }
    }
}

fn is_unitary(u: &Matrix2) -> bool {
    // U U† = I
    (0..2).all(|r| {
        (0..2).all(|c| {
            let dot: Complex64 = (0..2).map(|x| u[r][x] * u[c][x].conj()).sum();
            let expected = if r == c { 1.0 } else { 0.0 };
            (dot - expected).norm() <= tolerance::UNITARY
        })
    })
}
