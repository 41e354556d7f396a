//! Common interface of the two reduced-state engines.

use crate::classify::RegisterSubset;
use crate::linalg::DensityMatrix;
use crate::qubit::BlochVector;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Oracle,
    Analytic,
}

impl EngineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::Oracle => "oracle",
            EngineKind::Analytic => "analytic",
        }
    }
}

/// Computes `ρ_B(ψ)` for a register subset and an input Bloch vector.
///
/// The reduced matrix is ordered by pair index, signal before noise within a
/// pair, most significant qubit first.
pub trait ReductionEngine {
    fn kind(&self) -> EngineKind;

    fn reduce(&self, subset: &RegisterSubset, bloch: &BlochVector) -> Result<DensityMatrix>;
}

impl<E: ReductionEngine + ?Sized> ReductionEngine for &E {
    fn kind(&self) -> EngineKind {
        (**self).kind()
    }

    fn reduce(&self, subset: &RegisterSubset, bloch: &BlochVector) -> Result<DensityMatrix> {
        (**self).reduce(subset, bloch)
    }
}
