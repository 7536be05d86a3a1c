//! Dense statevector simulation of the quantum Fourier transform and its
//! approximate (degree-`m`) variant, with Gaussian phase-kick dephasing and
//! the tooling needed to measure how well the transform estimates the period
//! of a periodic register state.
//!
//! Module map:
//!
//! * [`state`]: the register ([`RegisterSize`], [`StateVector`]) and the two
//!   elementary gate kernels.
//! * [`network`]: QFT/AQFT gate programs, their execution and the reversed
//!   readout.
//! * [`noise`]: phase-kick model and the counter-keyed random streams.
//! * [`periodicity`]: periodic input states, spectra and the quality factor.
//! * [`bounds`]: closed-form success-probability bounds and related quantities.
//! * [`oracle`]: dense-matrix reference transforms used as ground truth.
//! * [`ensemble`]: parallel, seed-reproducible Monte Carlo ensembles and sweeps.

pub mod bounds;
pub mod ensemble;
mod error;
pub mod network;
pub mod noise;
pub mod oracle;
pub mod periodicity;
pub mod state;
pub mod tolerance;

pub use ensemble::{EnsembleResult, ExperimentConfig, SweepRow};
pub use error::{Error, Result};
pub use network::{GateOp, NetworkSpec};
pub use noise::{KickTrace, NoiseModel};
pub use periodicity::{PeriodicStateSpec, QualityResult, SpectrumResult};
pub use state::{RegisterSize, StateVector};

pub use num_complex::Complex64;
