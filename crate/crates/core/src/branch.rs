//! Analytic branch-interference calculus.
//!
//! After tracing out `A` and one qubit per pair, every reduced state of an
//! aligned subset is a sum over the 16 branch pairs `(μ, ν)` of a scalar
//! `αμ⁻¹αν · ⟨ψ|σνσμ|ψ⟩` times a tensor power of `σμσν` (kept signals) or
//! `(σνσμ)^T` (kept noises). Each of these 4x4 tables splits by which Pauli
//! `σj` the entry is proportional to, and the coefficient of `σj⊗n` is the
//! 𝒯-sum of the pointwise product of the `j` parts:
//!
//! `ρ = (1/2^n) (I⊗n + Σj bj · 𝒯(Mj)/4 · σj⊗n)`
//! with `Mj = Cj ∘ Aj ∘ Sj^{∘p} ∘ Nj^{∘q}`.
//!
//! All tables hold exact powers of `i`; nothing here is exponential in `n`.

use core::fmt;

use crate::classify::{canonical_shape, LeakSign, RegisterSubset, ShapeClass};
use crate::engine::{EngineKind, ReductionEngine};
use crate::exact::GaussInt;
use crate::linalg::DensityMatrix;
use crate::oracle::alpha_coeffs;
use crate::pauli::{pauli_mul, pauli_sum_to_dense, Pauli, PauliString, PauliSum};
use crate::qubit::BlochVector;
use crate::tol;
use crate::{Error, Result};

/// A 4x4 table indexed by the branch pair `(μ, ν)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoeffMatrix4 {
    entries: [[GaussInt; 4]; 4],
}

impl CoeffMatrix4 {
    pub const ZERO: CoeffMatrix4 = CoeffMatrix4 {
        entries: [[GaussInt::ZERO; 4]; 4],
    };

    pub fn identity() -> Self {
        Self::from_fn(|mu, nu| if mu == nu { GaussInt::ONE } else { GaussInt::ZERO })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> GaussInt) -> Self {
        let mut entries = [[GaussInt::ZERO; 4]; 4];
        for (mu, row) in entries.iter_mut().enumerate() {
            for (nu, e) in row.iter_mut().enumerate() {
                *e = f(mu, nu);
            }
        }
        CoeffMatrix4 { entries }
    }

    pub fn from_entries(entries: [[GaussInt; 4]; 4]) -> Self {
        CoeffMatrix4 { entries }
    }

    pub fn get(&self, mu: usize, nu: usize) -> GaussInt {
        self.entries[mu][nu]
    }

    /// Pointwise (Hadamard) product.
    pub fn hadamard(&self, other: &CoeffMatrix4) -> Self {
        Self::from_fn(|mu, nu| self.entries[mu][nu] * other.entries[mu][nu])
    }

    pub fn add(&self, other: &CoeffMatrix4) -> Self {
        Self::from_fn(|mu, nu| self.entries[mu][nu] + other.entries[mu][nu])
    }

    /// Entrywise `k`-th power on the support; zeros stay zero and `k = 0`
    /// gives the all-ones pattern of the support.
    pub fn pointwise_pow(&self, k: u32) -> Self {
        Self::from_fn(|mu, nu| self.entries[mu][nu].support_pow(k))
    }

    /// Keeps only the entries where `mask` is nonzero.
    pub fn restrict(&self, mask: &CoeffMatrix4) -> Self {
        Self::from_fn(|mu, nu| {
            if mask.entries[mu][nu].is_zero() {
                GaussInt::ZERO
            } else {
                self.entries[mu][nu]
            }
        })
    }

    /// `𝒯(M) = Σ_{μν} M_{μν}`.
    pub fn t_sum(&self) -> GaussInt {
        let mut acc = GaussInt::ZERO;
        for row in &self.entries {
            for e in row {
                acc += *e;
            }
        }
        acc
    }
}

impl fmt::Display for CoeffMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            for (i, e) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                if e.is_zero() {
                    write!(f, "{:>3}", ".")?;
                } else {
                    write!(f, "{:>3}", alloc::format!("{e}"))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `𝒯(M)` as a free function.
pub fn t_sum(m: &CoeffMatrix4) -> GaussInt {
    m.t_sum()
}

fn component(j: usize) -> Result<Pauli> {
    match j {
        1..=3 => Ok(Pauli::from_index(j).expect("1..=3")),
        _ => Err(Error::ComponentOutOfRange { j }),
    }
}

fn idx(mu: usize) -> Pauli {
    Pauli::from_index(mu).expect("branch index below 4")
}

/// The branch pairs whose product `σμσν` is proportional to `σj`, as a 0/1
/// mask. `j = 0` is the diagonal.
pub fn support(j: usize) -> CoeffMatrix4 {
    CoeffMatrix4::from_fn(|mu, nu| {
        if pauli_mul(idx(mu), idx(nu)).1.index() == j {
            GaussInt::ONE
        } else {
            GaussInt::ZERO
        }
    })
}

/// `C(n)[μ][ν] = αμ⁻¹ αν`, together with its parts `C1, C2, C3` restricted
/// to the supports of the three Bloch components.
pub fn coeff_matrix_c(n: usize) -> Result<(CoeffMatrix4, [CoeffMatrix4; 3])> {
    let alpha = alpha_coeffs(n)?;
    let full = CoeffMatrix4::from_fn(|mu, nu| (alpha[mu].inv() * alpha[nu]).to_gauss());
    let parts = [1, 2, 3].map(|j| full.restrict(&support(j)));
    Ok((full, parts))
}

/// `Aj`: coefficient of `bj` in `⟨ψ|σνσμ|ψ⟩`. Independent of `n`.
pub fn matrix_a(j: usize) -> Result<CoeffMatrix4> {
    let target = component(j)?;
    Ok(CoeffMatrix4::from_fn(|mu, nu| {
        let (phase, r) = pauli_mul(idx(nu), idx(mu));
        if r == target {
            phase.to_gauss()
        } else {
            GaussInt::ZERO
        }
    }))
}

/// `Sj`: coefficient of `σj` in `σμσν` (what a kept signal qubit carries).
fn matrix_s(target: Pauli) -> CoeffMatrix4 {
    CoeffMatrix4::from_fn(|mu, nu| {
        let (phase, r) = pauli_mul(idx(mu), idx(nu));
        if r == target {
            phase.to_gauss()
        } else {
            GaussInt::ZERO
        }
    })
}

/// `Nj`: coefficient of `σj` in `(σνσμ)^T` (what a kept noise qubit
/// carries).
fn matrix_n(target: Pauli) -> CoeffMatrix4 {
    CoeffMatrix4::from_fn(|mu, nu| {
        let (phase, r) = pauli_mul(idx(nu), idx(mu));
        if r == target {
            (phase * r.transpose_sign()).to_gauss()
        } else {
            GaussInt::ZERO
        }
    })
}

/// `Sj^{∘p}`.
pub fn matrix_s_pow(j: usize, p: u32) -> Result<CoeffMatrix4> {
    Ok(matrix_s(component(j)?).pointwise_pow(p))
}

/// `Nj^{∘q}`.
pub fn matrix_n_pow(j: usize, q: u32) -> Result<CoeffMatrix4> {
    Ok(matrix_n(component(j)?).pointwise_pow(q))
}

/// Aligned subset shape `B_{n,p}` up to permutation of the pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlignedShape {
    n: usize,
    p: usize,
    q: usize,
}

impl AlignedShape {
    pub fn new(n: usize, p: usize, q: usize) -> Result<Self> {
        if n == 0 || p + q != n {
            return Err(Error::InvalidShape { n, p, q });
        }
        Ok(AlignedShape { n, p, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signals(&self) -> usize {
        self.p
    }

    pub fn noises(&self) -> usize {
        self.q
    }
}

/// `Mj^{(n,p,q)} = Cj ∘ Aj ∘ Nj^{∘q} ∘ Sj^{∘p}`.
pub fn m_matrix(j: usize, shape: AlignedShape) -> Result<CoeffMatrix4> {
    let (_, parts) = coeff_matrix_c(shape.n)?;
    let cj = parts[component(j)?.index() - 1];
    Ok(cj
        .hadamard(&matrix_a(j)?)
        .hadamard(&matrix_n_pow(j, shape.q as u32)?)
        .hadamard(&matrix_s_pow(j, shape.p as u32)?))
}

/// `𝒯(M1)`, `𝒯(M2)`, `𝒯(M3)` for a shape.
pub fn t_sums(shape: AlignedShape) -> Result<[GaussInt; 3]> {
    Ok([
        m_matrix(1, shape)?.t_sum(),
        m_matrix(2, shape)?.t_sum(),
        m_matrix(3, shape)?.t_sum(),
    ])
}

/// Piecewise closed form of `𝒯(M2^{(n,p,n-p)})`: zero unless `n` and `p`
/// are both odd, then `4·(-1)^((n-1)/2)`.
pub fn t2_closed_form(n: usize, p: usize) -> Result<i64> {
    if p > n {
        return Err(Error::SignalCountAboveClones { p, n });
    }
    if n == 0 {
        return Err(Error::ZeroClones);
    }
    if n.is_multiple_of(2) || p.is_multiple_of(2) {
        Ok(0)
    } else if ((n - 1) / 2).is_multiple_of(2) {
        Ok(4)
    } else {
        Ok(-4)
    }
}

/// Leak sign for odd `n` as it falls out of the exact table calculus
/// (read off the single-signal shape `p = 1`).
pub fn calculus_sign(n: usize) -> Result<LeakSign> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenCloneCount { n });
    }
    let t = m_matrix(2, AlignedShape::new(n, 1, n - 1)?)?.t_sum();
    match (t.re, t.im) {
        (4, 0) => Ok(LeakSign::Plus),
        (-4, 0) => Ok(LeakSign::Minus),
        _ => Err(Error::NonRealBranchSum { j: 2, n, p: 1 }),
    }
}

/// Reduced state of an aligned subset as a Pauli sum in the order
/// `S1…Sp N(p+1)…Nn` (or any permutation of it; the result is symmetric).
///
/// Every Bloch component is carried through the calculus; the x and z
/// branch sums vanish identically, so only `y·Y⊗n` survives.
pub fn analytic_reduced_state(shape: AlignedShape, psi: &BlochVector) -> Result<PauliSum> {
    if psi.norm_sq() > 1.0 + tol::UNIT_NORM {
        return Err(Error::BlochOutOfBall { norm: psi.norm() });
    }
    let n = shape.n;
    let scale = 1.0 / (1u64 << n) as f64;
    let mut sum = PauliSum::zero(n);
    sum.add_term(PauliString::identity(n), scale)?;
    for (j, t) in t_sums(shape)?.into_iter().enumerate() {
        let j = j + 1;
        if !t.is_real() {
            return Err(Error::NonRealBranchSum {
                j,
                n,
                p: shape.p,
            });
        }
        let coeff = psi.component(j)? * t.re as f64 / 4.0 * scale;
        sum.add_term(PauliString::uniform(component(j)?, n), coeff)?;
    }
    Ok(sum)
}

/// Constant-size engine built on [`analytic_reduced_state`].
#[derive(Clone, Copy, Debug)]
pub struct AnalyticEngine {
    pub dense_cap: usize,
    /// Negates the `Y⊗n` coefficient. Only useful as a negative control
    /// for the engine-agreement checks.
    pub tamper_sign: bool,
}

impl Default for AnalyticEngine {
    fn default() -> Self {
        AnalyticEngine {
            dense_cap: tol::DENSE_CAP,
            tamper_sign: false,
        }
    }
}

impl AnalyticEngine {
    pub fn tampered() -> Self {
        AnalyticEngine {
            tamper_sign: true,
            ..Self::default()
        }
    }

    /// Pauli-sum form for any aligned subset.
    pub fn pauli_sum(&self, subset: &RegisterSubset, psi: &BlochVector) -> Result<PauliSum> {
        let shape = match canonical_shape(subset) {
            ShapeClass::Aligned(shape) => shape,
            _ => return Err(Error::NotAligned),
        };
        let sum = analytic_reduced_state(shape, psi)?;
        if !self.tamper_sign {
            return Ok(sum);
        }
        let mut flipped = PauliSum::zero(sum.qubit_count());
        for (p, c) in sum.terms() {
            let c = if p.letters().iter().all(|l| *l == Pauli::Y) { -c } else { c };
            flipped.add_term(p.clone(), c)?;
        }
        Ok(flipped)
    }
}

impl ReductionEngine for AnalyticEngine {
    fn kind(&self) -> EngineKind {
        EngineKind::Analytic
    }

    fn reduce(&self, subset: &RegisterSubset, bloch: &BlochVector) -> Result<DensityMatrix> {
        let sum = self.pauli_sum(subset, bloch)?;
        DensityMatrix::new(pauli_sum_to_dense(&sum, self.dense_cap)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::PairTag;
    use crate::exact::Phase;
    use crate::linalg::CMatrix;

    const O: GaussInt = GaussInt::ZERO;
    const P1: GaussInt = GaussInt::new(1, 0);
    const M1: GaussInt = GaussInt::new(-1, 0);
    const PI: GaussInt = GaussInt::new(0, 1);
    const MI: GaussInt = GaussInt::new(0, -1);

    fn table(rows: [[GaussInt; 4]; 4]) -> CoeffMatrix4 {
        CoeffMatrix4::from_entries(rows)
    }

    /// `-i^k` and friends for the general-n table.
    fn neg_ipow(k: i64) -> GaussInt {
        -Phase::i_pow(k).to_gauss()
    }

    #[test]
    fn c_tables_for_worked_cases() {
        let (c1, _) = coeff_matrix_c(1).unwrap();
        assert_eq!(
            c1,
            table([[P1, PI, P1, PI], [MI, P1, MI, P1], [P1, PI, P1, PI], [MI, P1, MI, P1]])
        );
        let (c2, _) = coeff_matrix_c(2).unwrap();
        assert_eq!([c2.get(0, 0), c2.get(0, 1), c2.get(0, 2), c2.get(0, 3)], [P1, PI, PI, PI]);
        let (c3, parts3) = coeff_matrix_c(3).unwrap();
        assert_eq!(
            c3,
            table([[P1, PI, M1, PI], [MI, P1, PI, P1], [M1, MI, P1, MI], [MI, P1, PI, P1]])
        );
        // n = 3 parts as tabulated
        assert_eq!(parts3[0], table([[O, PI, O, O], [MI, O, O, O], [O, O, O, MI], [O, O, PI, O]]));
        assert_eq!(parts3[1], table([[O, O, M1, O], [O, O, O, P1], [M1, O, O, O], [O, P1, O, O]]));
        assert_eq!(parts3[2], table([[O, O, O, PI], [O, O, PI, O], [O, MI, O, O], [MI, O, O, O]]));
        assert_eq!(coeff_matrix_c(0).unwrap_err(), Error::ZeroClones);
    }

    #[test]
    fn general_c_table() {
        for n in 1..=12i64 {
            let (c, parts) = coeff_matrix_c(n as usize).unwrap();
            assert_eq!(c.get(0, 2), neg_ipow(n + 1));
            assert_eq!(c.get(1, 2), Phase::i_pow(n + 2).to_gauss());
            assert_eq!(c.get(2, 0), neg_ipow(-(n + 1)));
            assert_eq!(c.get(2, 1), neg_ipow(-n));
            assert_eq!(c.get(2, 3), neg_ipow(-n));
            assert_eq!(c.get(3, 2), Phase::i_pow(n + 2).to_gauss());
            for k in 0..4 {
                assert_eq!(c.get(k, k), P1);
            }
            let rebuilt = CoeffMatrix4::identity().add(&parts[0]).add(&parts[1]).add(&parts[2]);
            assert_eq!(rebuilt, c);
            for row in 0..4 {
                for col in 0..4 {
                    let e = c.get(row, col);
                    assert!(e.as_phase().is_some());
                }
            }
        }
    }

    #[test]
    fn a_tables() {
        assert_eq!(
            matrix_a(1).unwrap(),
            table([[O, P1, O, O], [P1, O, O, O], [O, O, O, MI], [O, O, PI, O]])
        );
        assert_eq!(
            matrix_a(2).unwrap(),
            table([[O, O, P1, O], [O, O, O, PI], [P1, O, O, O], [O, MI, O, O]])
        );
        assert_eq!(
            matrix_a(3).unwrap(),
            table([[O, O, O, P1], [O, O, MI, O], [O, PI, O, O], [P1, O, O, O]])
        );
        assert_eq!(matrix_a(2).unwrap().get(3, 1), MI);
        assert_eq!(matrix_a(1).unwrap().get(2, 2), O);
        assert_eq!(matrix_a(0), Err(Error::ComponentOutOfRange { j: 0 }));
        assert_eq!(matrix_a(4), Err(Error::ComponentOutOfRange { j: 4 }));
    }

    #[test]
    fn s_and_n_tables() {
        assert_eq!(
            matrix_s_pow(1, 1).unwrap(),
            table([[O, P1, O, O], [P1, O, O, O], [O, O, O, PI], [O, O, MI, O]])
        );
        assert_eq!(
            matrix_s_pow(2, 1).unwrap(),
            table([[O, O, P1, O], [O, O, O, MI], [P1, O, O, O], [O, PI, O, O]])
        );
        assert_eq!(
            matrix_s_pow(3, 1).unwrap(),
            table([[O, O, O, P1], [O, O, PI, O], [O, MI, O, O], [P1, O, O, O]])
        );
        assert_eq!(
            matrix_n_pow(1, 1).unwrap(),
            table([[O, P1, O, O], [P1, O, O, O], [O, O, O, MI], [O, O, PI, O]])
        );
        assert_eq!(
            matrix_n_pow(2, 1).unwrap(),
            table([[O, O, M1, O], [O, O, O, MI], [M1, O, O, O], [O, PI, O, O]])
        );
        assert_eq!(
            matrix_n_pow(3, 1).unwrap(),
            table([[O, O, O, P1], [O, O, MI, O], [O, PI, O, O], [P1, O, O, O]])
        );
        assert_eq!(matrix_s_pow(2, 1).unwrap().get(1, 3), MI);
        assert_eq!(matrix_n_pow(2, 2).unwrap().get(0, 2), P1);
        assert_eq!(matrix_s_pow(3, 2).unwrap().get(1, 2), M1);
    }

    #[test]
    fn powered_tables_follow_closed_forms() {
        for k in 0..9u32 {
            let ip = |e: i64| Phase::i_pow(e * k as i64).to_gauss();
            let neg_one = if k % 2 == 0 { P1 } else { M1 };
            assert_eq!(
                matrix_s_pow(1, k).unwrap(),
                table([[O, P1, O, O], [P1, O, O, O], [O, O, O, ip(1)], [O, O, ip(-1), O]])
            );
            assert_eq!(
                matrix_s_pow(2, k).unwrap(),
                table([[O, O, P1, O], [O, O, O, ip(-1)], [P1, O, O, O], [O, ip(1), O, O]])
            );
            assert_eq!(
                matrix_n_pow(2, k).unwrap(),
                table([[O, O, neg_one, O], [O, O, O, ip(-1)], [neg_one, O, O, O], [O, ip(1), O, O]])
            );
            assert_eq!(
                matrix_n_pow(3, k).unwrap(),
                table([[O, O, O, P1], [O, O, ip(-1), O], [O, ip(1), O, O], [P1, O, O, O]])
            );
        }
        // exponent zero: all ones on the support
        assert_eq!(matrix_s_pow(2, 0).unwrap(), support(2));
    }

    #[test]
    fn worked_t_sums() {
        let s = |n, p| AlignedShape::new(n, p, n - p).unwrap();
        assert_eq!(m_matrix(2, s(1, 1)).unwrap().t_sum(), GaussInt::new(4, 0));
        assert_eq!(m_matrix(2, s(2, 1)).unwrap().t_sum(), O);
        // n = 1 products as displayed for the single signal and single noise
        assert_eq!(
            m_matrix(1, s(1, 1)).unwrap(),
            table([[O, PI, O, O], [MI, O, O, O], [O, O, O, PI], [O, O, MI, O]])
        );
        assert_eq!(
            m_matrix(2, s(1, 0)).unwrap(),
            table([[O, O, M1, O], [O, O, O, P1], [M1, O, O, O], [O, P1, O, O]])
        );
    }

    #[test]
    fn t_identities_and_closed_form() {
        for n in 1..=12usize {
            for p in 0..=n {
                let shape = AlignedShape::new(n, p, n - p).unwrap();
                let [t1, t2, t3] = t_sums(shape).unwrap();
                assert_eq!(t1, O, "T(M1) n={n} p={p}");
                assert_eq!(t3, O, "T(M3) n={n} p={p}");
                assert_eq!(t2, GaussInt::new(t2_closed_form(n, p).unwrap(), 0), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn m2_entries_match_general_form() {
        for n in 1..=12i64 {
            for p in 0..=n {
                let m = m_matrix(2, AlignedShape::new(n as usize, p as usize, (n - p) as usize).unwrap())
                    .unwrap();
                let parity = if (n - p) % 2 == 0 { P1 } else { M1 };
                assert_eq!(m.get(0, 2), -(parity * Phase::i_pow(n + 1).to_gauss()));
                assert_eq!(m.get(1, 3), Phase::i_pow(1 - n).to_gauss());
                assert_eq!(m.get(2, 0), -(parity * Phase::i_pow(-(n + 1)).to_gauss()));
                assert_eq!(m.get(3, 1), Phase::i_pow(n - 1).to_gauss());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(t2_closed_form(1, 1), Ok(4));
        assert_eq!(t2_closed_form(4, 2), Ok(0));
        assert_eq!(t2_closed_form(3, 1), Ok(-4));
        assert_eq!(t2_closed_form(5, 3), Ok(4));
        assert_eq!(t2_closed_form(3, 4), Err(Error::SignalCountAboveClones { p: 4, n: 3 }));
    }

    #[test]
    fn analytic_states() {
        let b = BlochVector::new(0.0, 0.6, 0.8).unwrap();
        let s = analytic_reduced_state(AlignedShape::new(1, 1, 0).unwrap(), &b).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.coeff(&PauliString::identity(1)) - 0.5).abs() < 1e-15);
        assert!((s.coeff(&PauliString::uniform(Pauli::Y, 1)) - 0.3).abs() < 1e-15);

        let s = analytic_reduced_state(AlignedShape::new(3, 2, 1).unwrap(), &b).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&PauliString::identity(3)), 0.125);

        let y1 = BlochVector::new(0.0, 1.0, 0.0).unwrap();
        let s = analytic_reduced_state(AlignedShape::new(3, 3, 0).unwrap(), &y1).unwrap();
        assert_eq!(s.coeff(&PauliString::uniform(Pauli::Y, 3)), -0.125);

        assert!(AlignedShape::new(3, 1, 1).is_err());
        assert!(AlignedShape::new(0, 0, 0).is_err());
    }

    #[test]
    fn calculus_signs() {
        assert_eq!(calculus_sign(1), Ok(LeakSign::Plus));
        assert_eq!(calculus_sign(3), Ok(LeakSign::Minus));
        assert_eq!(calculus_sign(5), Ok(LeakSign::Plus));
        assert_eq!(calculus_sign(2), Err(Error::EvenCloneCount { n: 2 }));
    }

    #[test]
    fn engine_rejects_non_aligned_and_tampers() {
        let e = AnalyticEngine::default();
        let b = BlochVector::new(0.0, 1.0, 0.0).unwrap();
        let oversized = RegisterSubset::new(alloc::vec![PairTag::Both]).unwrap();
        assert_eq!(e.reduce(&oversized, &b).unwrap_err(), Error::NotAligned);

        let s1 = RegisterSubset::new(alloc::vec![PairTag::Signal]).unwrap();
        let honest = e.reduce(&s1, &b).unwrap();
        let bent = AnalyticEngine::tampered().reduce(&s1, &b).unwrap();
        let mut expect = CMatrix::identity(2).scale(0.5);
        expect.set(0, 1, crate::Complex64::new(0.0, -0.5));
        expect.set(1, 0, crate::Complex64::new(0.0, 0.5));
        assert!(honest.matrix().max_abs_diff(&expect).unwrap() < 1e-15);
        assert!(bent.matrix().max_abs_diff(&expect).unwrap() > 0.9);
    }
}
