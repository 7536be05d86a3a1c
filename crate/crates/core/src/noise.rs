//! Dephasing as random Gaussian phase kicks.
//!
//! A kick of angle `φ` on a qubit maps `c0|0⟩ + c1|1⟩` to
//! `c0 e^{-iφ}|0⟩ + c1 e^{iφ}|1⟩`, with `φ ~ Normal(0, δ²)`. Kicks are attached
//! to the two qubits of every `B` gate, one independent draw per qubit, just
//! before the gate fires. `A` gates and idle wires are noiseless.
//!
//! Randomness is counter-keyed: the draw for qubit slot `q` of gate `g` in
//! realization `n` comes from a ChaCha8 generator whose 256-bit key is the
//! tuple `(master_seed, n, g, q)`. No generator state is shared between
//! gates or realizations, so results do not depend on execution order or on
//! how realizations are spread over threads. The Gaussian is drawn with
//! `rand_distr::StandardNormal` (ziggurat) and scaled by `δ`; the crate
//! versions are pinned and `golden_kick_trace` freezes the output.

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::network::GateOp;
use crate::state::StateVector;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Standard deviation of each phase kick, in radians.
    pub delta: f64,
    pub master_seed: u64,
}

impl NoiseModel {
    pub fn new(delta: f64, master_seed: u64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::domain(format!(
                "kick width must be finite and non-negative, got {delta}"
            )));
        }
        Ok(Self { delta, master_seed })
    }

    pub fn is_silent(&self) -> bool {
        self.delta == 0.0
    }

    /// The private stream for one qubit slot (0 = `j`, 1 = `k`) of one gate.
    pub fn stream(&self, realization_seed: u64, gate_index: u64, slot: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        for (chunk, word) in
            key.chunks_exact_mut(8)
                .zip([self.master_seed, realization_seed, gate_index, slot])
        {
            chunk.copy_from_slice(&word.to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

/// One kick actually applied during a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kick {
    pub gate_index: usize,
    pub qubit: usize,
    pub phi: f64,
}

/// Every kick of one realization, in application order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KickTrace {
    pub kicks: Vec<Kick>,
}

impl KickTrace {
    /// Writes one JSON object per line: `{"gate_index":..,"qubit":..,"phi":..}`.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        for kick in &self.kicks {
            serde_json::to_writer(&mut out, kick)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Draws `φ ~ Normal(0, δ²)`. `δ = 0` returns exactly zero without drawing.
pub fn sample_phase<R: Rng + ?Sized>(delta: f64, stream: &mut R) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let z: f64 = stream.sample(StandardNormal);
    delta * z
}

/// Multiplies the `|0⟩` branch of `qubit` by `e^{-iφ}` and the `|1⟩` branch by `e^{iφ}`.
pub fn apply_kick(state: &mut StateVector, qubit: usize, phi: f64) -> Result<()> {
    state.size().check_qubit(qubit)?;
    apply_kick_unchecked(state, qubit, phi);
    Ok(())
}

pub(crate) fn apply_kick_unchecked(state: &mut StateVector, qubit: usize, phi: f64) {
    let plus = Complex64::from_polar(1.0, phi);
    state.apply_diagonal_unchecked(qubit, plus.conj(), plus);
}

/// The kick pair `(φ_j, φ_k)` for gate `gate_index` of realization
/// `realization_seed`. Only `B` gates are kicked.
pub fn kicks_for_gate(
    model: &NoiseModel,
    realization_seed: u64,
    gate_index: usize,
    gate: &GateOp,
) -> Result<(f64, f64)> {
    match *gate {
        GateOp::B { .. } => Ok(kick_pair(model, realization_seed, gate_index)),
        GateOp::A { .. } => Err(Error::Contract(format!(
            "gate {gate_index} is an A gate; A gates receive no kicks"
        ))),
    }
}

pub(crate) fn kick_pair(
    model: &NoiseModel,
    realization_seed: u64,
    gate_index: usize,
) -> (f64, f64) {
    if model.is_silent() {
        return (0.0, 0.0);
    }
    let g = gate_index as u64;
    let phi_j = sample_phase(model.delta, &mut model.stream(realization_seed, g, 0));
    let phi_k = sample_phase(model.delta, &mut model.stream(realization_seed, g, 1));
    (phi_j, phi_k)
}
