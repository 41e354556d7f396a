//! Brute-force ground truth: the full encoded statevector and explicit
//! partial traces.
//!
//! Qubit layout is `A, S1, N1, S2, N2, …, Sn, Nn`, with `A` on the most
//! significant bit of the amplitude index.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::classify::RegisterSubset;
use crate::engine::{EngineKind, ReductionEngine};
use crate::exact::Phase;
use crate::linalg::{CMatrix, DensityMatrix};
use crate::pauli::Pauli;
use crate::qubit::{state_from_bloch, BlochVector, PureQubit};
use crate::tol;
use crate::{Error, Result};

/// Branch phases `(α0, α1, α2, α3) = (1, i, -i^(n+1), i)`.
pub fn alpha_coeffs(n: usize) -> Result<[Phase; 4]> {
    if n == 0 {
        return Err(Error::ZeroClones);
    }
    let a2 = -Phase::i_pow(n as i64 + 1);
    Ok([Phase::ONE, Phase::I, a2, Phase::I])
}

/// `(σμ ⊗ I)(|00⟩ + |11⟩)/√2`, indexed `2·s + n` for signal bit `s` and
/// noise bit `n`.
pub fn bell_branch(mu: Pauli) -> [Complex64; 4] {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for s in 0..2 {
        for k in 0..2 {
            out[2 * s + k] = mu.entry(s, k) * h;
        }
    }
    out
}

/// Encoded `(2n+1)`-qubit pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn qubit_count(&self) -> usize {
        2 * self.n + 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Ordered set of qubit positions in the `2n+1` layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitSet {
    positions: Vec<usize>,
}

impl QubitSet {
    /// Position of the source qubit `A`.
    pub const SOURCE: usize = 0;

    pub fn new(mut positions: Vec<usize>, n: usize) -> Result<Self> {
        let qubits = 2 * n + 1;
        positions.sort_unstable();
        for w in positions.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateQubit { index: w[0] });
            }
        }
        if let Some(&bad) = positions.iter().find(|&&p| p >= qubits) {
            return Err(Error::QubitOutOfRange { index: bad, qubits });
        }
        Ok(QubitSet { positions })
    }

    /// Position of `S_i` (1-based pair index).
    pub fn signal(i: usize) -> usize {
        2 * i - 1
    }

    /// Position of `N_i` (1-based pair index).
    pub fn noise(i: usize) -> usize {
        2 * i
    }

    pub fn from_subset(b: &RegisterSubset) -> Self {
        let mut positions = Vec::with_capacity(b.size());
        for (i, t) in b.tags().iter().enumerate() {
            if t.has_signal() {
                positions.push(Self::signal(i + 1));
            }
            if t.has_noise() {
                positions.push(Self::noise(i + 1));
            }
        }
        QubitSet { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// `|Ψ⟩ = ½ Σμ αμ⁻¹ σμ|ψ⟩ ⊗ (⊗ᵢ |φμ⟩)`, refusing `n > cap`.
pub fn build_encoded_state(n: usize, psi: &PureQubit, cap: usize) -> Result<StateVector> {
    let alphas = alpha_coeffs(n)?;
    if n > cap {
        return Err(Error::ClonesAboveCap { n, cap });
    }
    let qubits = 2 * n + 1;
    let dim = 1usize << qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let input = psi.amplitudes();

    for (mu, alpha) in Pauli::ALL.iter().zip(alphas) {
        let weight = alpha.inv().to_complex() * 0.5;
        let source = [
            mu.entry(0, 0) * input[0] + mu.entry(0, 1) * input[1],
            mu.entry(1, 0) * input[0] + mu.entry(1, 1) * input[1],
        ];
        let bell = bell_branch(*mu);
        for (idx, amp) in amps.iter_mut().enumerate() {
            let mut v = weight * source[idx >> (qubits - 1)];
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            for pair in 0..n {
                // pair i occupies bits (2(n-i)-1, 2(n-i)-2) counted from the LSB
                let shift = 2 * (n - 1 - pair);
                v *= bell[(idx >> shift) & 3];
            }
            *amp += v;
        }
    }
    Ok(StateVector { n, amps })
}

/// `Tr_{complement}(|Ψ⟩⟨Ψ|)` computed straight from the amplitudes, without
/// forming the full density matrix.
pub fn reduced_density(state: &StateVector, keep: &QubitSet, cap: usize) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let qubits = state.qubit_count();
    if let Some(&bad) = keep.positions().iter().find(|&&p| p >= qubits) {
        return Err(Error::QubitOutOfRange { index: bad, qubits });
    }
    if keep.len() > cap {
        return Err(Error::QubitCountAboveCap {
            qubits: keep.len(),
            cap,
        });
    }
    let k = keep.len();
    let rest_len = qubits - k;
    let keep_bits: Vec<usize> = keep.positions().iter().map(|p| qubits - 1 - p).collect();
    let rest_bits: Vec<usize> = (0..qubits)
        .filter(|p| !keep.positions().contains(p))
        .map(|p| qubits - 1 - p)
        .collect();
    let d_keep = 1usize << k;
    let d_rest = 1usize << rest_len;

    // M[a][r] with a the kept index and r the traced index
    let mut m = vec![Complex64::new(0.0, 0.0); d_keep * d_rest];
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        let a = gather(idx, &keep_bits);
        let r = gather(idx, &rest_bits);
        m[a * d_rest + r] = *amp;
    }
    let mut rho = CMatrix::zeros(d_keep);
    for a in 0..d_keep {
        let ra = &m[a * d_rest..(a + 1) * d_rest];
        for b in a..d_keep {
            let rb = &m[b * d_rest..(b + 1) * d_rest];
            let v: Complex64 = ra.iter().zip(rb).map(|(x, y)| x * y.conj()).sum();
            rho.set(a, b, v);
            if a != b {
                rho.set(b, a, v.conj());
            }
        }
    }
    DensityMatrix::without_positivity_check(rho)
}

/// Packs the listed bits of `idx`, first listed bit most significant.
fn gather(idx: usize, bits: &[usize]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | ((idx >> b) & 1))
}

/// Trace out the second qubit of a two-qubit operator.
fn trace_second(m: &[[Complex64; 4]; 4]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            out[a][b] = m[2 * a][2 * b] + m[2 * a + 1][2 * b + 1];
        }
    }
    out
}

fn trace_first(m: &[[Complex64; 4]; 4]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            out[a][b] = m[a][b] + m[2 + a][2 + b];
        }
    }
    out
}

fn mul2(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Largest deviation, over all 16 branch pairs, from
/// `Tr_N(|φμ⟩⟨φν|) = ½ σμσν` and `Tr_S(|φμ⟩⟨φν|) = ½ (σνσμ)^T`.
pub fn bell_trace_identity_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for mu in Pauli::ALL {
        for nu in Pauli::ALL {
            let (u, v) = (bell_branch(mu), bell_branch(nu));
            let mut outer = [[Complex64::new(0.0, 0.0); 4]; 4];
            for r in 0..4 {
                for c in 0..4 {
                    outer[r][c] = u[r] * v[c].conj();
                }
            }
            let keep_signal = trace_second(&outer);
            let keep_noise = trace_first(&outer);
            let mn = mul2(mu.matrix(), nu.matrix());
            let nm = mul2(nu.matrix(), mu.matrix());
            for r in 0..2 {
                for c in 0..2 {
                    worst = worst.max((keep_signal[r][c] - mn[r][c] * 0.5).norm());
                    worst = worst.max((keep_noise[r][c] - nm[c][r] * 0.5).norm());
                }
            }
        }
    }
    worst
}

/// Statevector engine.
#[derive(Clone, Copy, Debug)]
pub struct OracleEngine {
    /// Largest clone count accepted.
    pub cap: usize,
    /// Largest reduced subsystem, in qubits.
    pub dense_cap: usize,
}

impl Default for OracleEngine {
    fn default() -> Self {
        OracleEngine {
            cap: tol::ORACLE_CAP,
            dense_cap: tol::DENSE_CAP,
        }
    }
}

impl OracleEngine {
    pub fn with_cap(cap: usize) -> Self {
        OracleEngine {
            cap,
            ..Self::default()
        }
    }

    pub fn state(&self, n: usize, bloch: &BlochVector) -> Result<StateVector> {
        build_encoded_state(n, &state_from_bloch(bloch)?, self.cap)
    }

    /// Reduction onto an arbitrary position set, `A` included.
    pub fn reduce_positions(
        &self,
        n: usize,
        keep: &QubitSet,
        bloch: &BlochVector,
    ) -> Result<DensityMatrix> {
        reduced_density(&self.state(n, bloch)?, keep, self.dense_cap)
    }
}

impl ReductionEngine for OracleEngine {
    fn kind(&self) -> EngineKind {
        EngineKind::Oracle
    }

    fn reduce(&self, subset: &RegisterSubset, bloch: &BlochVector) -> Result<DensityMatrix> {
        let keep = QubitSet::from_subset(subset);
        let state = self.state(subset.n(), bloch)?;
        reduced_density(&state, &keep, self.dense_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::PairTag;
    use crate::pauli::{expectation, PauliString};
    use proptest::prelude::*;

    fn bloch(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector::new(x, y, z).unwrap()
    }

    fn half_plus(y: f64) -> CMatrix {
        let mut m = CMatrix::identity(2).scale(0.5);
        m.set(0, 1, Complex64::new(0.0, -0.5 * y));
        m.set(1, 0, Complex64::new(0.0, 0.5 * y));
        m
    }

    #[test]
    fn alpha_examples() {
        use Phase as P;
        assert_eq!(alpha_coeffs(1).unwrap(), [P::ONE, P::I, P::ONE, P::I]);
        assert_eq!(alpha_coeffs(2).unwrap(), [P::ONE, P::I, P::I, P::I]);
        assert_eq!(alpha_coeffs(3).unwrap(), [P::ONE, P::I, P::MINUS_ONE, P::I]);
        assert_eq!(alpha_coeffs(0), Err(Error::ZeroClones));
    }

    #[test]
    fn bell_branches() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let c = |v: f64| Complex64::new(v, 0.0);
        assert_eq!(bell_branch(Pauli::I), [c(h), c(0.0), c(0.0), c(h)]);
        assert_eq!(bell_branch(Pauli::X), [c(0.0), c(h), c(h), c(0.0)]);
        assert_eq!(bell_branch(Pauli::Z), [c(h), c(0.0), c(0.0), c(-h)]);
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                let (u, v) = (bell_branch(a), bell_branch(b));
                let ip: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bell_trace_identities_hold() {
        assert!(bell_trace_identity_residual() < 1e-12);
    }

    #[test]
    fn n1_worked_case() {
        let o = OracleEngine::default();
        let b = bloch(0.0, 0.6, 0.8);
        let s1 = o.reduce(&RegisterSubset::new(vec![PairTag::Signal]).unwrap(), &b).unwrap();
        assert!(s1.matrix().max_abs_diff(&half_plus(0.6)).unwrap() < 1e-12);
        let n1 = o.reduce(&RegisterSubset::new(vec![PairTag::Noise]).unwrap(), &b).unwrap();
        assert!(n1.max_abs_diff(&DensityMatrix::maximally_mixed(1)).unwrap() < 1e-12);

        let zero = o.reduce(&RegisterSubset::new(vec![PairTag::Signal]).unwrap(), &bloch(0.0, 0.0, 1.0));
        assert!(zero.unwrap().max_abs_diff(&DensityMatrix::maximally_mixed(1)).unwrap() < 1e-12);
    }

    #[test]
    fn n2_signals_are_maximally_mixed() {
        let o = OracleEngine::default();
        let b = bloch(0.36, 0.48, 0.8);
        let ss = RegisterSubset::new(vec![PairTag::Signal, PairTag::Signal]).unwrap();
        let rho = o.reduce(&ss, &b).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(2)).unwrap() < 1e-12);
        let s1 = o.reduce_positions(2, &QubitSet::new(vec![QubitSet::signal(1)], 2).unwrap(), &b);
        assert!(s1.unwrap().max_abs_diff(&DensityMatrix::maximally_mixed(1)).unwrap() < 1e-12);
    }

    #[test]
    fn n3_leak_sign_from_statevector() {
        let o = OracleEngine::default();
        let rho = o.reduce(&RegisterSubset::aligned(3, 1).unwrap(), &bloch(0.0, 1.0, 0.0)).unwrap();
        let e = expectation(&rho, &PauliString::uniform(Pauli::Y, 3)).unwrap();
        assert!((e + 1.0).abs() < 1e-12, "Tr(ρ Y⊗3) = {e}");
    }

    #[test]
    fn errors() {
        let psi = PureQubit::ZERO;
        assert_eq!(build_encoded_state(6, &psi, 5), Err(Error::ClonesAboveCap { n: 6, cap: 5 }));
        let s = build_encoded_state(1, &psi, 5).unwrap();
        assert_eq!(
            reduced_density(&s, &QubitSet::new(vec![], 1).unwrap(), 12),
            Err(Error::EmptyKeepSet)
        );
        assert_eq!(
            reduced_density(&s, &QubitSet::new(vec![0, 1, 2], 1).unwrap(), 2),
            Err(Error::QubitCountAboveCap { qubits: 3, cap: 2 })
        );
        assert!(matches!(QubitSet::new(vec![1, 1], 1), Err(Error::DuplicateQubit { index: 1 })));
        assert!(matches!(QubitSet::new(vec![3], 1), Err(Error::QubitOutOfRange { .. })));
    }

    #[test]
    fn source_and_singletons_are_maximally_mixed() {
        let o = OracleEngine::default();
        let b = bloch(0.48, 0.6, 0.64);
        for n in 2..=4 {
            let mut singles = vec![QubitSet::SOURCE];
            for i in 1..=n {
                singles.push(QubitSet::signal(i));
                singles.push(QubitSet::noise(i));
            }
            for pos in singles {
                let rho = o.reduce_positions(n, &QubitSet::new(vec![pos], n).unwrap(), &b).unwrap();
                assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(1)).unwrap() < 1e-12);
            }
        }
    }

    fn sphere() -> impl Strategy<Value = BlochVector> {
        (0.0f64..core::f64::consts::PI, -core::f64::consts::PI..core::f64::consts::PI)
            .prop_map(|(t, p)| BlochVector::from_angles(t, p))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn encoded_state_has_unit_norm(b in sphere(), n in 1usize..=5) {
            let s = build_encoded_state(n, &state_from_bloch(&b).unwrap(), 5).unwrap();
            prop_assert!((s.norm_sq() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn reduction_is_consistent_under_nesting(b in sphere(), mask in 1u32..128) {
            // keep K from the n = 3 layout, then K' = K minus its last qubit
            let o = OracleEngine::default();
            let state = o.state(3, &b).unwrap();
            let positions: Vec<usize> = (0..7).filter(|p| mask >> p & 1 == 1).collect();
            prop_assume!(positions.len() >= 2);
            let big = reduced_density(&state, &QubitSet::new(positions.clone(), 3).unwrap(), 12).unwrap();
            let small_pos = positions[..positions.len() - 1].to_vec();
            let direct = reduced_density(&state, &QubitSet::new(small_pos, 3).unwrap(), 12).unwrap();
            let m = big.matrix();
            let d = direct.dim();
            let nested = CMatrix::from_fn(d, |r, c| m.get(2 * r, 2 * c) + m.get(2 * r + 1, 2 * c + 1));
            prop_assert!(nested.max_abs_diff(direct.matrix()).unwrap() < 1e-12);
        }

        #[test]
        fn source_qubit_is_maximally_mixed(b in sphere(), n in 1usize..=4) {
            let o = OracleEngine::default();
            let rho = o.reduce_positions(n, &QubitSet::new(vec![QubitSet::SOURCE], n).unwrap(), &b).unwrap();
            prop_assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(1)).unwrap() < 1e-12);
        }
    }
}
