use core::fmt;

/// Everything that can go wrong in the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `|amp0|^2 + |amp1|^2` is not 1.
    NotNormalized { norm_sq: f64 },
    /// Bloch vector longer than the unit sphere allows.
    BlochOutOfBall { norm: f64 },
    /// A pure state was required but the Bloch vector is not on the sphere.
    MixedBlochVector { norm: f64 },
    /// A non-finite Bloch component.
    NonFiniteBloch,
    QubitCountAboveCap { qubits: usize, cap: usize },
    DimensionMismatch { expected: usize, found: usize },
    NotPowerOfTwo { dim: usize },
    /// Density-matrix validation failed.
    NotHermitian { deviation: f64 },
    BadTrace { trace: f64 },
    NotPositive { min_eigenvalue: f64 },
    /// Imaginary part of an expectation value above tolerance.
    ComplexExpectation { imag: f64 },
    ZeroClones,
    ClonesAboveCap { n: usize, cap: usize },
    EmptyKeepSet,
    QubitOutOfRange { index: usize, qubits: usize },
    DuplicateQubit { index: usize },
    /// Bloch component index outside `1..=3`.
    ComponentOutOfRange { j: usize },
    SignalCountAboveClones { p: usize, n: usize },
    InvalidShape { n: usize, p: usize, q: usize },
    EmptySubset,
    EnumerationGuard { n: usize, max: usize },
    /// The analytic engine only handles subsets with one qubit per pair.
    NotAligned,
    /// The leak sign for odd `n` has not been resolved.
    SignUnresolved { n: usize },
    /// Sign resolution requires odd `n`.
    EvenCloneCount { n: usize },
    /// Independent routes disagree on the sign of the leak.
    SignDisagreement { n: usize },
    /// The 𝒯-sum of a branch table came out non-real.
    NonRealBranchSum { j: usize, n: usize, p: usize },
    InvalidSliceY { y: f64 },
    SliceTooSmall { k: usize },
    GridTooSmall { size: usize },
    /// A trace distance landed between the uninformative and informative
    /// thresholds, which the theory says cannot happen.
    SeparationGap { distance: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotNormalized { norm_sq } => {
                write!(f, "state is not normalized (|a0|^2+|a1|^2 = {norm_sq})")
            }
            Error::BlochOutOfBall { norm } => write!(f, "Bloch vector norm {norm} exceeds 1"),
            Error::MixedBlochVector { norm } => {
                write!(f, "Bloch vector norm {norm} does not describe a pure state")
            }
            Error::NonFiniteBloch => write!(f, "Bloch vector has a non-finite component"),
            Error::QubitCountAboveCap { qubits, cap } => {
                write!(f, "{qubits} qubits exceeds the dense cap of {cap}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotPowerOfTwo { dim } => write!(f, "dimension {dim} is not a power of two"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::BadTrace { trace } => write!(f, "trace {trace} is not 1"),
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "matrix has negative eigenvalue {min_eigenvalue:e}")
            }
            Error::ComplexExpectation { imag } => {
                write!(f, "expectation value has imaginary residue {imag:e}")
            }
            Error::ZeroClones => write!(f, "clone count must be at least 1"),
            Error::ClonesAboveCap { n, cap } => {
                write!(f, "n = {n} exceeds the oracle cap of {cap}")
            }
            Error::EmptyKeepSet => write!(f, "cannot reduce onto an empty set of qubits"),
            Error::QubitOutOfRange { index, qubits } => {
                write!(f, "qubit position {index} out of range for {qubits} qubits")
            }
            Error::DuplicateQubit { index } => write!(f, "qubit position {index} listed twice"),
            Error::ComponentOutOfRange { j } => {
                write!(f, "Bloch component index {j} not in 1..=3")
            }
            Error::SignalCountAboveClones { p, n } => write!(f, "p = {p} exceeds n = {n}"),
            Error::InvalidShape { n, p, q } => {
                write!(f, "invalid aligned shape (n={n}, p={p}, q={q})")
            }
            Error::EmptySubset => write!(f, "the empty subset has no classification"),
            Error::EnumerationGuard { n, max } => {
                write!(f, "n = {n} exceeds the enumeration guard of {max}")
            }
            Error::NotAligned => {
                write!(f, "subset is not aligned (needs exactly one qubit from every pair)")
            }
            Error::SignUnresolved { n } => write!(f, "leak sign for n = {n} is unresolved"),
            Error::EvenCloneCount { n } => write!(f, "no leak sign exists for even n = {n}"),
            Error::SignDisagreement { n } => {
                write!(f, "leak sign estimates disagree for n = {n}")
            }
            Error::NonRealBranchSum { j, n, p } => {
                write!(f, "branch sum T(M{j}) is not real for n={n}, p={p}")
            }
            Error::InvalidSliceY { y } => write!(f, "slice coordinate y = {y} outside [-1, 1]"),
            Error::SliceTooSmall { k } => write!(f, "slice needs at least 2 points, got {k}"),
            Error::GridTooSmall { size } => {
                write!(f, "grid needs at least the 6 axis poles, got {size}")
            }
            Error::SeparationGap { distance } => write!(
                f,
                "trace distance {distance:e} lies inside the forbidden gap (1e-10, 1e-3)"
            ),
        }
    }
}

impl core::error::Error for Error {}
