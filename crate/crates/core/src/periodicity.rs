//! Periodic register states and the quality factor of period estimation.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::state::{RegisterSize, StateVector};
use crate::tolerance;
use crate::{Error, Result};

/// `f(a) = 1` when `a mod r = l`, else `0`, on a register of `size` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicStateSpec {
    #[serde(rename = "qubits")]
    pub size: RegisterSize,
    pub r: u64,
    pub l: u64,
}

impl PeriodicStateSpec {
    pub fn new(size: RegisterSize, r: u64, l: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("period must be positive"));
        }
        if l >= r {
            return Err(Error::domain(format!(
                "offset {l} must be smaller than period {r}"
            )));
        }
        if l >= size.dim() as u64 {
            return Err(Error::domain(format!(
                "offset {l} leaves a {}-qubit register empty",
                size.qubits()
            )));
        }
        Ok(Self { size, r, l })
    }

    /// Number of basis states with `a mod r = l`.
    pub fn occupied(&self) -> u64 {
        let s = self.size.dim() as u64;
        (s - self.l).div_ceil(self.r)
    }

    /// A warning when `2^L / r < 50`, where peaks start to overlap.
    pub fn sparsity_warning(&self) -> Option<String> {
        let ratio = self.size.dim() as f64 / self.r as f64;
        (ratio < 50.0).then(|| {
            format!(
                "2^L/r = {ratio:.2} is below 50; spectral peaks are broad for L={} r={}",
                self.size.qubits(),
                self.r
            )
        })
    }
}

pub fn make_periodic_state(spec: &PeriodicStateSpec) -> Result<StateVector> {
    let s = spec.size.dim();
    let amp = Complex64::new(1.0 / (spec.occupied() as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); s];
    for a in (spec.l as usize..s).step_by(spec.r as usize) {
        amps[a] = amp;
    }
    StateVector::from_amplitudes(spec.size, amps)
}

/// Nearest integer to `num / den`, ties to even.
fn round_ratio_half_even(num: u64, den: u64) -> u64 {
    let (q, rem) = (num / den, num % den);
    match (2 * rem).cmp(&den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => q + (q & 1),
    }
}

/// Sorted, deduplicated `round(λ 2^L / r) mod 2^L` for `λ = 0..r-1`.
pub fn peak_targets(size: RegisterSize, r: u64) -> Vec<u64> {
    let s = size.dim() as u64;
    let mut targets: Vec<u64> = (0..r)
        .map(|lambda| round_ratio_half_even(lambda * s, r) % s)
        .collect();
    targets.sort_unstable();
    targets.dedup();
    targets
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Probability of each Fourier index `c`.
    pub probs: Vec<f64>,
    pub peak_targets: Vec<u64>,
}

pub fn spectrum(probs: Vec<f64>, spec: &PeriodicStateSpec) -> Result<SpectrumResult> {
    if probs.len() != spec.size.dim() {
        return Err(Error::domain(format!(
            "expected {} probabilities, got {}",
            spec.size.dim(),
            probs.len()
        )));
    }
    let total: f64 = probs.iter().sum();
    if probs.iter().any(|p| p.is_nan() || *p < 0.0)
        || (total - 1.0).abs() > tolerance::PROBABILITY_SUM
    {
        return Err(Error::domain(format!(
            "not a probability distribution (sum {total})"
        )));
    }
    Ok(SpectrumResult {
        probs,
        peak_targets: peak_targets(spec.size, spec.r),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityResult {
    pub q: f64,
    pub per_peak: BTreeMap<u64, f64>,
}

/// Total probability of landing on a peak target.
pub fn quality_factor(spectrum: &SpectrumResult) -> QualityResult {
    let per_peak: BTreeMap<u64, f64> = spectrum
        .peak_targets
        .iter()
        .map(|&c| (c, spectrum.probs[c as usize]))
        .collect();
    QualityResult {
        q: per_peak.values().sum(),
        per_peak,
    }
}

impl SpectrumResult {
    /// CSV with columns `c,probability,is_peak_target`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["c", "probability", "is_peak_target"])?;
        let mut peaks = self.peak_targets.iter().peekable();
        for (c, p) in self.probs.iter().enumerate() {
            let is_peak = peaks.next_if(|&&t| t == c as u64).is_some();
            wtr.serialize((c, p, is_peak))?;
        }
        wtr.flush()?;
        Ok(())
    }
}
