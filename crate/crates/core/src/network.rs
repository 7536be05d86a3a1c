//! QFT and AQFT gate programs.
//!
//! The network for `L` qubits processes targets from `L-1` down to `0`. Each
//! target `t` first receives the conditional phases `B(t, k)` pairing it with
//! every already-processed qubit `k > t` (highest `k` first), then the
//! single-qubit gate `A_t`. For `L = 4`:
//!
//! ```text
//! (A3)(B23 A2)(B13 B12 A1)(B03 B02 B01 A0)
//! ```
//!
//! `B(j, k)` applies `exp(iπ/2^(k-j))` to basis states with bits `j` and `k`
//! set. The AQFT of degree `m` keeps only the `B` gates with qubit distance
//! `k - j <= m - 1`; `m = L` is the exact transform and `m = 1` the Hadamard
//! transform. The register holds the Fourier coefficient of index `c` at
//! position `bit_reverse(c)`, see [`read_output`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::noise::{self, Kick, KickTrace, NoiseModel};
use crate::state::{bit_reverse, RegisterSize, StateVector, HADAMARD};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GateOp {
    A { target: usize },
    B { j: usize, k: usize, theta: f64 },
}

impl GateOp {
    /// `B(j, k)` with `j < k` and `θ = π / 2^(k-j)`.
    pub fn b(j: usize, k: usize) -> Self {
        debug_assert!(j < k);
        GateOp::B {
            j,
            k,
            theta: PI / (1u64 << (k - j)) as f64,
        }
    }

    pub fn is_b(&self) -> bool {
        matches!(self, GateOp::B { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    #[serde(rename = "qubits")]
    pub size: RegisterSize,
    /// Approximation degree; `m = L` is the exact transform.
    pub m: u32,
    pub readout_reversed: bool,
    pub gates: Vec<GateOp>,
}

/// The exact QFT network: `L(L+1)/2` gates.
pub fn build_qft(size: RegisterSize) -> NetworkSpec {
    build(size, size.qubits())
}

/// The degree-`m` AQFT network: `L` `A` gates and `(2L-m)(m-1)/2` `B` gates.
pub fn build_aqft(size: RegisterSize, m: u32) -> Result<NetworkSpec> {
    if m == 0 || m > size.qubits() {
        return Err(Error::domain(format!(
            "AQFT degree must be in 1..={}, got {m}",
            size.qubits()
        )));
    }
    Ok(build(size, m))
}

fn build(size: RegisterSize, m: u32) -> NetworkSpec {
    let l = size.qubits() as usize;
    let max_distance = m as usize - 1;
    let mut gates = Vec::with_capacity(l + (2 * l - m as usize) * max_distance / 2);
    for t in (0..l).rev() {
        for k in (t + 1..l).rev() {
            if k - t <= max_distance {
                gates.push(GateOp::b(t, k));
            }
        }
        gates.push(GateOp::A { target: t });
    }
    NetworkSpec {
        size,
        m,
        readout_reversed: true,
        gates,
    }
}

impl NetworkSpec {
    pub fn num_a(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_b()).count()
    }

    pub fn num_b(&self) -> usize {
        self.gates.iter().filter(|g| g.is_b()).count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Runs `network` on `input`. With a noise model each `B` gate is preceded by
/// independent kicks on its two qubits, keyed by `realization_seed` and the
/// gate's position in the program.
pub fn run(
    network: &NetworkSpec,
    input: &StateVector,
    noise: Option<&NoiseModel>,
    realization_seed: u64,
) -> Result<StateVector> {
    let mut state = input.clone();
    run_in_place(network, &mut state, noise, realization_seed, None)?;
    Ok(state)
}

/// As [`run`], also returning every kick applied.
pub fn run_traced(
    network: &NetworkSpec,
    input: &StateVector,
    noise: Option<&NoiseModel>,
    realization_seed: u64,
) -> Result<(StateVector, KickTrace)> {
    let mut state = input.clone();
    let mut trace = KickTrace::default();
    run_in_place(
        network,
        &mut state,
        noise,
        realization_seed,
        Some(&mut trace),
    )?;
    Ok((state, trace))
}

pub fn run_in_place(
    network: &NetworkSpec,
    state: &mut StateVector,
    noise: Option<&NoiseModel>,
    realization_seed: u64,
    mut trace: Option<&mut KickTrace>,
) -> Result<()> {
    if network.size != state.size() {
        return Err(Error::domain(format!(
            "network is for {} qubits but the state has {}",
            network.size.qubits(),
            state.size().qubits()
        )));
    }
    for (gate_index, gate) in network.gates.iter().enumerate() {
        match *gate {
            GateOp::A { target } => {
                state.size().check_qubit(target)?;
                state.apply_single_qubit_unchecked(target, &HADAMARD);
            }
            GateOp::B { j, k, theta } => {
                if let Some(model) = noise {
                    let (phi_j, phi_k) = noise::kick_pair(model, realization_seed, gate_index);
                    if let Some(trace) = trace.as_deref_mut() {
                        trace.kicks.push(Kick {
                            gate_index,
                            qubit: j,
                            phi: phi_j,
                        });
                        trace.kicks.push(Kick {
                            gate_index,
                            qubit: k,
                            phi: phi_k,
                        });
                    }
                    if !model.is_silent() {
                        noise::apply_kick(state, j, phi_j)?;
                        noise::apply_kick(state, k, phi_k)?;
                    }
                }
                state.apply_controlled_phase(j, k, theta)?;
            }
        }
    }
    Ok(())
}

/// Probability of each Fourier index `c`: `|amp(bit_reverse(c))|²`.
pub fn read_output(state: &StateVector) -> Vec<f64> {
    let bits = state.size().qubits();
    let amps = state.amplitudes();
    (0..amps.len())
        .map(|c| amps[bit_reverse(c, bits)].norm_sqr())
        .collect()
}

/// Complex Fourier coefficient of each index `c`, undoing the reversed readout.
pub fn read_amplitudes(state: &StateVector) -> Vec<num_complex::Complex64> {
    let bits = state.size().qubits();
    let amps = state.amplitudes();
    (0..amps.len())
        .map(|c| amps[bit_reverse(c, bits)])
        .collect()
}
