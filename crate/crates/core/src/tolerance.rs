//! Numerical tolerances shared by the whole crate.

/// Allowed deviation of the squared norm from one after gate application.
pub const NORM: f64 = 1e-10;

/// Allowed deviation of `U U†` from the identity when a 2x2 gate is checked.
pub const UNITARY: f64 = 1e-12;

/// Allowed deviation of a probability sequence's sum from one.
pub const PROBABILITY_SUM: f64 = 1e-9;

/// Largest supported register (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: u32 = 24;

/// Largest register for which dense oracle matrices are built.
pub const MAX_ORACLE_QUBITS: u32 = 12;
