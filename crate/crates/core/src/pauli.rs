//! Single-qubit Pauli algebra and sparse Pauli-sum operators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::exact::Phase;
use crate::linalg::{CMatrix, DensityMatrix};
use crate::tol;
use crate::{Error, Result};

/// `σ0 = I, σ1 = X, σ2 = Y, σ3 = Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_index(i: usize) -> Option<Pauli> {
        Self::ALL.get(i).copied()
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['I', 'X', 'Y', 'Z'][self as usize]
    }

    /// Whether the matrix is off-diagonal (X or Y).
    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Entry `(row, col)` of the 2x2 matrix.
    pub fn entry(self, row: usize, col: usize) -> Complex64 {
        self.matrix()[row][col]
    }

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    /// `σ^T`: every Pauli is symmetric except `Y^T = -Y`.
    pub fn transpose_sign(self) -> Phase {
        if self == Pauli::Y {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }
}

/// `σa σb = phase · σresult`.
pub fn pauli_mul(a: Pauli, b: Pauli) -> (Phase, Pauli) {
    use Pauli::*;
    match (a, b) {
        (I, p) | (p, I) => (Phase::ONE, p),
        (p, q) if p == q => (Phase::ONE, I),
        (X, Y) => (Phase::I, Z),
        (Y, Z) => (Phase::I, X),
        (Z, X) => (Phase::I, Y),
        (Y, X) => (Phase::MINUS_I, Z),
        (Z, Y) => (Phase::MINUS_I, X),
        (X, Z) => (Phase::MINUS_I, Y),
        _ => unreachable!(),
    }
}

/// A tensor product of single-qubit Paulis, leftmost letter on the most
/// significant qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString(letters)
    }

    pub fn identity(qubits: usize) -> Self {
        PauliString(alloc::vec![Pauli::I; qubits])
    }

    /// The same letter on every qubit, e.g. `Y⊗n`.
    pub fn uniform(letter: Pauli, qubits: usize) -> Self {
        PauliString(alloc::vec![letter; qubits])
    }

    pub fn parse(text: &str) -> Option<Self> {
        text.chars()
            .map(|c| match c {
                'I' => Some(Pauli::I),
                'X' => Some(Pauli::X),
                'Y' => Some(Pauli::Y),
                'Z' => Some(Pauli::Z),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(PauliString)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    /// Column index of the single nonzero entry in `row`, and its value.
    fn row_entry(&self, row: usize) -> (usize, Complex64) {
        let k = self.0.len();
        let mut col = row;
        let mut value = Complex64::new(1.0, 0.0);
        for (pos, &p) in self.0.iter().enumerate() {
            let bit = k - 1 - pos;
            let r = (row >> bit) & 1;
            let c = if p.flips() { r ^ 1 } else { r };
            if p.flips() {
                col ^= 1 << bit;
            }
            value *= p.entry(r, c);
        }
        (col, value)
    }

    pub fn to_dense(&self) -> CMatrix {
        let dim = 1usize << self.0.len();
        let mut m = CMatrix::zeros(dim);
        for row in 0..dim {
            let (col, v) = self.row_entry(row);
            m.set(row, col, v);
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

/// Real linear combination of Pauli strings on a fixed number of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn zero(qubits: usize) -> Self {
        PauliSum {
            qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    /// Adds `coeff · string`, dropping the term if the result falls below
    /// the pruning threshold.
    pub fn add_term(&mut self, string: PauliString, coeff: f64) -> Result<()> {
        if string.len() != self.qubits {
            return Err(Error::DimensionMismatch {
                expected: self.qubits,
                found: string.len(),
            });
        }
        let value = self.terms.get(&string).copied().unwrap_or(0.0) + coeff;
        if value.abs() < tol::PRUNE {
            self.terms.remove(&string);
        } else {
            self.terms.insert(string, value);
        }
        Ok(())
    }

    pub fn coeff(&self, string: &PauliString) -> f64 {
        self.terms.get(string).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Human-readable listing such as `0.5*II + 0.125*YY`.
    pub fn listing(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{c}*{p}");
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Dense matrix `Σ c_s · P_s`, subject to a qubit cap.
pub fn pauli_sum_to_dense(sum: &PauliSum, cap: usize) -> Result<CMatrix> {
    if sum.qubits > cap {
        return Err(Error::QubitCountAboveCap {
            qubits: sum.qubits,
            cap,
        });
    }
    let dim = 1usize << sum.qubits;
    let mut m = CMatrix::zeros(dim);
    for (string, c) in sum.terms() {
        for row in 0..dim {
            let (col, v) = string.row_entry(row);
            m.add_at(row, col, v * c);
        }
    }
    Ok(m)
}

/// Pauli decomposition of a Hermitian matrix, `c_s = Tr(ρ P_s) / 2^k`.
///
/// Recurses on the leading qubit: with `ρ = [[A, B], [C, D]]` the I, X, Y, Z
/// parts are `(A+D)/2`, `(B+C)/2`, `i(B-C)/2`, `(A-D)/2`. Cost `O(k·4^k)`.
pub fn dense_to_pauli_sum(m: &CMatrix) -> Result<PauliSum> {
    let qubits = m.qubit_count().ok_or(Error::NotPowerOfTwo { dim: m.dim() })?;
    let mut sum = PauliSum::zero(qubits);
    let mut prefix = Vec::with_capacity(qubits);
    decompose(m.clone(), &mut prefix, &mut sum)?;
    Ok(sum)
}

fn decompose(m: CMatrix, prefix: &mut Vec<Pauli>, out: &mut PauliSum) -> Result<()> {
    let dim = m.dim();
    if dim == 1 {
        let v = m.get(0, 0);
        if v.im.abs() > tol::EXPECTATION_IMAG {
            return Err(Error::NotHermitian { deviation: v.im.abs() });
        }
        if v.re.abs() >= tol::PRUNE {
            out.add_term(PauliString::new(prefix.clone()), v.re)?;
        }
        return Ok(());
    }
    let h = dim / 2;
    let block = |r0: usize, c0: usize| CMatrix::from_fn(h, |r, c| m.get(r0 + r, c0 + c));
    let (a, b, c, d) = (block(0, 0), block(0, h), block(h, 0), block(h, h));
    let half = 0.5;
    let i = Complex64::new(0.0, 1.0);
    let parts = [
        (Pauli::I, a.add(&d)?.scale(half)),
        (Pauli::X, b.add(&c)?.scale(half)),
        (Pauli::Y, CMatrix::from_fn(h, |r, col| i * (b.get(r, col) - c.get(r, col)) * half)),
        (Pauli::Z, a.sub(&d)?.scale(half)),
    ];
    for (p, part) in parts {
        if part.as_slice().iter().all(|z| z.norm() < tol::PRUNE) {
            continue;
        }
        prefix.push(p);
        decompose(part, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// `Tr(ρ P)`, which must be real up to [`tol::EXPECTATION_IMAG`].
pub fn expectation(rho: &DensityMatrix, p: &PauliString) -> Result<f64> {
    let m = rho.matrix();
    let dim = m.dim();
    if dim != 1usize << p.len() {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: 1usize << p.len(),
        });
    }
    // Tr(ρP) = Σ_r P[r][c(r)] ρ[c(r)][r]
    let mut acc = Complex64::new(0.0, 0.0);
    for row in 0..dim {
        let (col, v) = p.row_entry(row);
        acc += v * m.get(col, row);
    }
    if acc.im.abs() > tol::EXPECTATION_IMAG {
        return Err(Error::ComplexExpectation { imag: acc.im });
    }
    Ok(acc.re)
}
