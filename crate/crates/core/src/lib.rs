//! Storage-register model for Pauli-based encrypted cloning of a single qubit,
//! and a classifier that sorts every register subset into authorized,
//! completely uninformative, or partially informative.
//!
//! Two independent routes compute reduced states:
//!
//! * [`oracle`] builds the full `2n + 1` qubit encoded statevector and takes
//!   explicit partial traces.
//! * [`branch`] works entirely with 4x4 branch-pair coefficient tables over
//!   exact powers of `i` and never materializes anything exponential.
//!
//! The [`leakage`] module measures ψ-dependence of reduced states and is the
//! bridge used to check the structural [`classify`] rules against either
//! engine.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod branch;
pub mod classify;
pub mod engine;
mod error;
pub mod exact;
pub mod leakage;
pub mod linalg;
pub mod oracle;
pub mod pauli;
pub mod qubit;
pub mod tol;

pub use branch::{AlignedShape, AnalyticEngine, CoeffMatrix4};
pub use classify::{
    Classification, LeakDescriptor, LeakSign, PairTag, RegisterSubset, RuleTag, ShapeClass,
    SignSource, SignTable, Verdict,
};
pub use engine::{EngineKind, ReductionEngine};
pub use error::Error;
pub use exact::{GaussInt, Phase};
pub use leakage::{BlochGrid, Informativeness, LeakageReport, ProbeVerdict};
pub use linalg::{CMatrix, DensityMatrix};
pub use oracle::{OracleEngine, QubitSet, StateVector};
pub use pauli::{Pauli, PauliString, PauliSum};
pub use qubit::{BlochVector, PureQubit};

pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;
