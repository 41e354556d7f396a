//! Numerical thresholds shared by every module.

/// Pauli-sum coefficients smaller than this are dropped.
pub const PRUNE: f64 = 1e-14;

/// Unit-norm slack for pure states and Bloch vectors.
pub const UNIT_NORM: f64 = 1e-12;

/// Slack accepted by `state_from_bloch` before rejecting a vector as mixed.
pub const PURE_BLOCH: f64 = 1e-9;

/// Elementwise Hermiticity, trace and positivity slack for density matrices.
pub const DENSITY: f64 = 1e-10;

/// Largest imaginary residue tolerated in a Pauli expectation value.
pub const EXPECTATION_IMAG: f64 = 1e-10;

/// Trace distances below this count as "no ψ-dependence".
pub const UNINFORMATIVE: f64 = 1e-10;

/// Trace distances above this count as genuine ψ-dependence. Anything
/// between [`UNINFORMATIVE`] and this value is a diagnostic failure.
pub const INFORMATIVE: f64 = 1e-3;

/// Below this, pairwise distances are reported through a Frobenius upper
/// bound instead of a full eigendecomposition.
pub const DISTANCE_FLOOR: f64 = 1e-12;

/// Max-entry agreement required between the two engines.
pub const ENGINE_AGREEMENT: f64 = 1e-10;

/// Default dense-representation cap in qubits.
pub const DENSE_CAP: usize = 12;

/// Default largest clone count the statevector oracle will build.
pub const ORACLE_CAP: usize = 5;

/// Largest `n` for which all `4^n - 1` membership patterns are enumerated.
pub const ENUMERATION_GUARD: usize = 10;
