//! Distance-based informativeness tests and the `Y⊗n` leak estimator.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::branch::calculus_sign;
use crate::classify::{LeakSign, RegisterSubset, SignSource, SignTable, Verdict};
use crate::engine::{EngineKind, ReductionEngine};
use crate::linalg::{trace_norm, CMatrix, DensityMatrix};
use crate::oracle::OracleEngine;
use crate::pauli::{expectation, Pauli, PauliString};
use crate::qubit::BlochVector;
use crate::tol;
use crate::{Error, Result};

/// `½ Σ|λ(r1 − r2)|`.
pub fn trace_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    let diff = r1.matrix().sub(r2.matrix())?;
    Ok((0.5 * trace_norm(&diff)).min(1.0))
}

/// Lower and upper bounds on the trace distance from the Frobenius norm of
/// the difference.
fn distance_bounds(diff: &CMatrix) -> (f64, f64) {
    let half_f = 0.5 * diff.frobenius_norm();
    let upper = half_f * libm::sqrt(diff.dim() as f64);
    (half_f, upper.min(1.0))
}

/// Largest pairwise trace distance. Exact eigensolves only run for pairs
/// whose upper bound could still raise the running maximum; pairs whose
/// bound is below [`tol::DISTANCE_FLOOR`] report the bound.
pub fn max_pairwise_distance(states: &[DensityMatrix]) -> Result<f64> {
    let mut pairs = Vec::new();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let diff = states[i].matrix().sub(states[j].matrix())?;
            let (lower, upper) = distance_bounds(&diff);
            pairs.push((lower, upper, diff));
        }
    }
    pairs.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut best = pairs.iter().map(|p| p.0).fold(0.0f64, f64::max);
    let mut exact_best = 0.0f64;
    for (_, upper, diff) in &pairs {
        if *upper <= exact_best || exact_best >= 1.0 - tol::DISTANCE_FLOOR {
            break;
        }
        let d = if *upper < tol::DISTANCE_FLOOR {
            *upper
        } else {
            (0.5 * trace_norm(diff)).min(1.0)
        };
        exact_best = exact_best.max(d);
    }
    best = best.max(exact_best);
    Ok(best)
}

/// Probe set on the Bloch sphere: the six axis poles followed by a
/// Fibonacci spiral whose azimuth is offset by the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochGrid {
    points: Vec<BlochVector>,
    seed: u64,
}

impl BlochGrid {
    pub const POLES: usize = 6;
    pub const PLUS_Y: usize = 2;
    pub const MINUS_Y: usize = 3;
    pub const STANDARD_SIZE: usize = 26;

    pub fn new(size: usize, seed: u64) -> Result<Self> {
        if size < Self::POLES {
            return Err(Error::GridTooSmall { size });
        }
        let mut points = alloc::vec![
            BlochVector { x: 1.0, y: 0.0, z: 0.0 },
            BlochVector { x: -1.0, y: 0.0, z: 0.0 },
            BlochVector { x: 0.0, y: 1.0, z: 0.0 },
            BlochVector { x: 0.0, y: -1.0, z: 0.0 },
            BlochVector { x: 0.0, y: 0.0, z: 1.0 },
            BlochVector { x: 0.0, y: 0.0, z: -1.0 },
        ];
        let m = size - Self::POLES;
        let golden = PI * (3.0 - libm::sqrt(5.0));
        let offset = 2.0 * PI * frac(seed as f64 * 0.618_033_988_749_894_8);
        for i in 0..m {
            let z = 1.0 - (2 * i + 1) as f64 / m as f64;
            let theta = libm::acos(z);
            points.push(BlochVector::from_angles(theta, i as f64 * golden + offset));
        }
        Ok(BlochGrid { points, seed })
    }

    /// 26 points, seed 0.
    pub fn standard() -> Self {
        Self::new(Self::STANDARD_SIZE, 0).expect("standard grid size is valid")
    }

    pub fn points(&self) -> &[BlochVector] {
        &self.points
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn frac(v: f64) -> f64 {
    v - libm::floor(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Informativeness {
    Uninformative,
    Informative,
}

impl Informativeness {
    /// Applies the thresholds; a distance strictly between them is an error.
    pub fn from_distance(distance: f64) -> Result<Self> {
        if distance < tol::UNINFORMATIVE {
            Ok(Informativeness::Uninformative)
        } else if distance > tol::INFORMATIVE {
            Ok(Informativeness::Informative)
        } else {
            Err(Error::SeparationGap { distance })
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Informativeness::Uninformative => "UNINFORMATIVE",
            Informativeness::Informative => "INFORMATIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeakageReport {
    pub subset: RegisterSubset,
    pub max_pairwise_distance: f64,
    /// `Tr(ρ_B Y⊗|B|)` at the `+y` pole.
    pub y_signal: f64,
    pub verdict: Informativeness,
    pub engine: EngineKind,
}

/// `Tr(ρ Y⊗n)`.
pub fn y_leak_estimate(rho: &DensityMatrix, n: usize) -> Result<f64> {
    if rho.qubit_count() != n {
        return Err(Error::DimensionMismatch {
            expected: 1usize << n,
            found: rho.dim(),
        });
    }
    expectation(rho, &PauliString::uniform(Pauli::Y, n))
}

fn reduce_all<E: ReductionEngine>(
    engine: &E,
    subset: &RegisterSubset,
    points: &[BlochVector],
) -> Result<Vec<DensityMatrix>> {
    points.iter().map(|b| engine.reduce(subset, b)).collect()
}

/// Reduces the subset at every grid point and measures how far apart the
/// resulting states are.
pub fn informativeness_probe<E: ReductionEngine>(
    engine: &E,
    subset: &RegisterSubset,
    grid: &BlochGrid,
) -> Result<LeakageReport> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let states = reduce_all(engine, subset, grid.points())?;
    let max = max_pairwise_distance(&states)?;
    let plus_y = &states[BlochGrid::PLUS_Y];
    Ok(LeakageReport {
        subset: subset.clone(),
        max_pairwise_distance: max,
        y_signal: y_leak_estimate(plus_y, plus_y.qubit_count())?,
        verdict: Informativeness::from_distance(max)?,
        engine: engine.kind(),
    })
}

/// `k` pure states sharing the Bloch component `y`, spread evenly around
/// the circle in the x-z plane.
pub fn fixed_y_slice(y: f64, k: usize) -> Result<Vec<BlochVector>> {
    if !y.is_finite() || y.abs() > 1.0 {
        return Err(Error::InvalidSliceY { y });
    }
    if k < 2 {
        return Err(Error::SliceTooSmall { k });
    }
    let r = libm::sqrt((1.0 - y * y).max(0.0));
    Ok((0..k)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / k as f64;
            BlochVector {
                x: r * libm::cos(a),
                y,
                z: r * libm::sin(a),
            }
        })
        .collect())
}

/// Largest trace distance among `k` inputs with the same `y`.
pub fn fixed_y_slice_probe<E: ReductionEngine>(
    engine: &E,
    subset: &RegisterSubset,
    y: f64,
    k: usize,
) -> Result<f64> {
    let points = fixed_y_slice(y, k)?;
    max_pairwise_distance(&reduce_all(engine, subset, &points)?)
}

/// How the reduced state depends on the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeVerdict {
    /// No dependence at all.
    Independent,
    /// Depends on `y` and on nothing else.
    YOnly,
    /// Depends on more than `y`.
    General,
}

impl ProbeVerdict {
    pub fn verdict(self) -> Verdict {
        match self {
            ProbeVerdict::Independent => Verdict::CompletelyUninformative,
            ProbeVerdict::YOnly => Verdict::PartiallyInformative,
            ProbeVerdict::General => Verdict::Authorized,
        }
    }
}

/// Slices used by [`probe_verdict`].
pub const SLICE_YS: [f64; 3] = [0.0, 0.5, -0.5];
pub const SLICE_POINTS: usize = 8;

/// Three-way classification from the grid probe plus fixed-y slices.
pub fn probe_verdict<E: ReductionEngine>(
    engine: &E,
    subset: &RegisterSubset,
    grid: &BlochGrid,
) -> Result<(ProbeVerdict, LeakageReport)> {
    let report = informativeness_probe(engine, subset, grid)?;
    if report.verdict == Informativeness::Uninformative {
        return Ok((ProbeVerdict::Independent, report));
    }
    let poles = [
        engine.reduce(subset, &grid.points()[BlochGrid::PLUS_Y])?,
        engine.reduce(subset, &grid.points()[BlochGrid::MINUS_Y])?,
    ];
    let pole_distance = trace_distance(&poles[0], &poles[1])?;
    if Informativeness::from_distance(pole_distance)? == Informativeness::Uninformative {
        return Ok((ProbeVerdict::General, report));
    }
    for y in SLICE_YS {
        let d = fixed_y_slice_probe(engine, subset, y, SLICE_POINTS)?;
        if Informativeness::from_distance(d)? == Informativeness::Informative {
            return Ok((ProbeVerdict::General, report));
        }
    }
    Ok((ProbeVerdict::YOnly, report))
}

/// Sign of `Tr(ρ Y⊗n)` at `y = +1` for odd `n`, read from the oracle on the
/// single-signal and all-signal aligned subsets, which must agree.
pub fn resolve_leak_sign(n: usize, oracle: &OracleEngine) -> Result<LeakSign> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenCloneCount { n });
    }
    if n > oracle.cap {
        return Err(Error::ClonesAboveCap { n, cap: oracle.cap });
    }
    let plus_y = BlochVector { x: 0.0, y: 1.0, z: 0.0 };
    let mut signs = Vec::new();
    for p in [1, n] {
        let rho = oracle.reduce(&RegisterSubset::aligned(n, p)?, &plus_y)?;
        let v = y_leak_estimate(&rho, n)?;
        if (v.abs() - 1.0).abs() > tol::ENGINE_AGREEMENT {
            return Err(Error::SignDisagreement { n });
        }
        signs.push(LeakSign::from_value(v));
    }
    if signs[0] != signs[1] {
        return Err(Error::SignDisagreement { n });
    }
    Ok(signs[0])
}

/// Signs for every odd `n ≤ max_n`: oracle-resolved up to the oracle cap,
/// from the table calculus beyond it.
pub fn resolve_sign_table(max_n: usize, oracle: &OracleEngine) -> Result<SignTable> {
    let mut table = SignTable::new();
    for n in (1..=max_n).step_by(2) {
        if n <= oracle.cap {
            table.insert(n, resolve_leak_sign(n, oracle)?, SignSource::Oracle);
        } else {
            table.insert(n, calculus_sign(n)?, SignSource::TableCalculus);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::AnalyticEngine;
    use crate::classify::PairTag;
    use crate::pauli::{pauli_sum_to_dense, PauliSum};
    use proptest::prelude::*;
    use std::vec;

    fn half_i_plus_y(y: f64) -> DensityMatrix {
        let mut s = PauliSum::zero(1);
        s.add_term(PauliString::identity(1), 0.5).unwrap();
        s.add_term(PauliString::uniform(Pauli::Y, 1), 0.5 * y).unwrap();
        DensityMatrix::new(pauli_sum_to_dense(&s, 4).unwrap()).unwrap()
    }

    fn subset(tags: &[PairTag]) -> RegisterSubset {
        RegisterSubset::new(tags.to_vec()).unwrap()
    }

    use PairTag::{Absent as O, Both as B, Noise as N, Signal as S};

    #[test]
    fn trace_distance_examples() {
        let mixed = DensityMatrix::maximally_mixed(1);
        assert_eq!(trace_distance(&mixed, &mixed).unwrap(), 0.0);
        assert!((trace_distance(&half_i_plus_y(1.0), &half_i_plus_y(-1.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((trace_distance(&half_i_plus_y(0.6), &mixed).unwrap() - 0.3).abs() < 1e-12);
        assert!(matches!(
            trace_distance(&mixed, &DensityMatrix::maximally_mixed(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn arb_state() -> impl Strategy<Value = DensityMatrix> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_map(|(x, y, z)| {
            let r = libm::sqrt(x * x + y * y + z * z).max(1.0);
            let mut s = PauliSum::zero(1);
            s.add_term(PauliString::identity(1), 0.5).unwrap();
            s.add_term(PauliString::uniform(Pauli::X, 1), 0.5 * x / r).unwrap();
            s.add_term(PauliString::uniform(Pauli::Y, 1), 0.5 * y / r).unwrap();
            s.add_term(PauliString::uniform(Pauli::Z, 1), 0.5 * z / r).unwrap();
            DensityMatrix::new(pauli_sum_to_dense(&s, 4).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn metric_axioms(a in arb_state(), b in arb_state(), c in arb_state()) {
            let ab = trace_distance(&a, &b).unwrap();
            let ba = trace_distance(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!(trace_distance(&a, &a).unwrap() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab));
            let ac = trace_distance(&a, &c).unwrap();
            let bc = trace_distance(&b, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-12);
        }

        #[test]
        fn grids_are_unit_and_keep_poles(size in 6usize..60, seed in any::<u64>()) {
            let g = BlochGrid::new(size, seed).unwrap();
            prop_assert_eq!(g.len(), size);
            for p in g.points() {
                prop_assert!((p.norm() - 1.0).abs() < 1e-12);
            }
            prop_assert_eq!(g.points()[BlochGrid::PLUS_Y], BlochVector { x: 0.0, y: 1.0, z: 0.0 });
            prop_assert_eq!(g.points()[BlochGrid::MINUS_Y], BlochVector { x: 0.0, y: -1.0, z: 0.0 });
        }
    }

    #[test]
    fn max_distance_matches_brute_force() {
        let states: Vec<_> = [-1.0, -0.3, 0.0, 0.2, 0.9].iter().map(|y| half_i_plus_y(*y)).collect();
        let mut brute = 0.0f64;
        for a in &states {
            for b in &states {
                brute = brute.max(trace_distance(a, b).unwrap());
            }
        }
        assert!((max_pairwise_distance(&states).unwrap() - brute).abs() < 1e-12);
        assert_eq!(max_pairwise_distance(&states[..1]).unwrap(), 0.0);
    }

    #[test]
    fn grid_shape() {
        let g = BlochGrid::standard();
        assert_eq!(g.len(), 26);
        assert_eq!(g.seed(), 0);
        assert_ne!(BlochGrid::new(26, 1).unwrap(), g);
        assert_eq!(BlochGrid::new(26, 7).unwrap(), BlochGrid::new(26, 7).unwrap());
        assert_eq!(BlochGrid::new(5, 0), Err(Error::GridTooSmall { size: 5 }));
    }

    #[test]
    fn probe_examples() {
        let oracle = OracleEngine::default();
        let grid = BlochGrid::standard();
        let r = informativeness_probe(&oracle, &subset(&[S, N]), &grid).unwrap();
        assert!(r.max_pairwise_distance < 1e-10);
        assert_eq!(r.verdict, Informativeness::Uninformative);
        assert_eq!(r.engine, EngineKind::Oracle);

        let r = informativeness_probe(&oracle, &subset(&[S, N, N]), &grid).unwrap();
        assert!((r.max_pairwise_distance - 1.0).abs() < 1e-10);
        assert!((r.y_signal + 1.0).abs() < 1e-10);

        let r = informativeness_probe(&oracle, &subset(&[N]), &grid).unwrap();
        assert!(r.max_pairwise_distance < 1e-10);

        let r = informativeness_probe(&AnalyticEngine::default(), &subset(&[S, N, N]), &grid).unwrap();
        assert_eq!(r.verdict, Informativeness::Informative);
        assert_eq!(r.engine, EngineKind::Analytic);
        assert_eq!(
            informativeness_probe(&AnalyticEngine::default(), &subset(&[B, O]), &grid).unwrap_err(),
            Error::NotAligned
        );
    }

    #[test]
    fn y_leak_examples() {
        assert!((y_leak_estimate(&half_i_plus_y(1.0), 1).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(y_leak_estimate(&DensityMatrix::maximally_mixed(3), 3).unwrap(), 0.0);
        assert!(y_leak_estimate(&DensityMatrix::maximally_mixed(3), 2).is_err());
        let oracle = OracleEngine::default();
        let s = resolve_leak_sign(3, &oracle).unwrap();
        let rho = oracle
            .reduce(&subset(&[S, S, S]), &BlochVector::new(0.0, 0.5, libm::sqrt(0.75)).unwrap())
            .unwrap();
        assert!((y_leak_estimate(&rho, 3).unwrap() - s.value() * 0.5).abs() < 1e-10);
    }

    #[test]
    fn slice_examples() {
        let oracle = OracleEngine::default();
        assert!(fixed_y_slice_probe(&oracle, &subset(&[S, N, N]), 0.5, 8).unwrap() < 1e-10);
        assert!(fixed_y_slice_probe(&oracle, &subset(&[S]), 0.0, 8).unwrap() < 1e-10);
        assert!(fixed_y_slice_probe(&oracle, &subset(&[S, S]), 0.9, 8).unwrap() < 1e-10);
        assert!(fixed_y_slice_probe(&oracle, &subset(&[B]), 0.0, 8).unwrap() > 1e-3);
        assert_eq!(fixed_y_slice(1.5, 8), Err(Error::InvalidSliceY { y: 1.5 }));
        assert_eq!(fixed_y_slice(0.0, 1), Err(Error::SliceTooSmall { k: 1 }));
        for p in fixed_y_slice(0.3, 5).unwrap() {
            assert!((p.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn probe_verdicts() {
        let oracle = OracleEngine::default();
        let grid = BlochGrid::standard();
        let cases = [
            (vec![S], ProbeVerdict::YOnly),
            (vec![N], ProbeVerdict::Independent),
            (vec![B], ProbeVerdict::General),
            (vec![S, N], ProbeVerdict::Independent),
            (vec![S, S, N], ProbeVerdict::Independent),
            (vec![S, S, S], ProbeVerdict::YOnly),
        ];
        for (tags, want) in cases {
            let (got, _) = probe_verdict(&oracle, &subset(&tags), &grid).unwrap();
            assert_eq!(got, want, "{tags:?}");
        }
    }

    #[test]
    fn sign_resolution() {
        let oracle = OracleEngine::default();
        assert_eq!(resolve_leak_sign(1, &oracle), Ok(LeakSign::Plus));
        assert_eq!(resolve_leak_sign(3, &oracle), Ok(LeakSign::Minus));
        assert_eq!(resolve_leak_sign(2, &oracle), Err(Error::EvenCloneCount { n: 2 }));
        assert_eq!(
            resolve_leak_sign(7, &oracle),
            Err(Error::ClonesAboveCap { n: 7, cap: 5 })
        );
        let table = resolve_sign_table(7, &OracleEngine::with_cap(3)).unwrap();
        assert_eq!(table.get(3), Some((LeakSign::Minus, SignSource::Oracle)));
        assert_eq!(table.get(5), Some((LeakSign::Plus, SignSource::TableCalculus)));
        assert_eq!(table.get(7), Some((LeakSign::Minus, SignSource::TableCalculus)));
        assert_eq!(table.get(4), None);
    }
}
