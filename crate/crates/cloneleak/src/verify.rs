//! The invariant suite behind `cloneleak verify`.

use std::io::Write;
use std::time::Instant;

use cloneleak_core::branch::{calculus_sign, t2_closed_form, t_sums};
use cloneleak_core::classify::{canonical_shape, enumerate_classifications};
use cloneleak_core::leakage::{probe_verdict, resolve_sign_table, y_leak_estimate};
use cloneleak_core::oracle::bell_trace_identity_residual;
use cloneleak_core::{
    tol, AlignedShape, AnalyticEngine, BlochGrid, DensityMatrix, GaussInt, LeakSign, OracleEngine,
    QubitSet, ReductionEngine, RegisterSubset, ShapeClass, SignSource, SignTable,
};
use serde::Serialize;

use crate::commands::{grid_for, oracle_for};
use crate::report::Record;
use crate::{CliError, Common, EngineChoice, Format, Outcome};

/// Largest `n` for the exact branch-sum identities.
pub const T_IDENTITY_MAX_N: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(check: &'static str, passed: bool, detail: String) -> Self {
        Check { check, passed, detail }
    }
}

#[derive(Debug, Serialize)]
struct SignRow {
    n: usize,
    sign: i8,
    source: &'static str,
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    passed: usize,
    failed: usize,
    signs: Vec<SignRow>,
    sign_report: String,
}

/// Exact `𝒯` identities for every shape with `n ≤ max_n`.
pub fn check_t_identities(max_n: usize) -> Result<Check, CliError> {
    let mut shapes = 0;
    let mut bad = Vec::new();
    for n in 1..=max_n {
        for p in 0..=n {
            let [t1, t2, t3] = t_sums(AlignedShape::new(n, p, n - p)?)?;
            let want = GaussInt::new(t2_closed_form(n, p)?, 0);
            if t1 != GaussInt::ZERO || t3 != GaussInt::ZERO || t2 != want {
                bad.push(format!("(n={n}, p={p})"));
            }
            shapes += 1;
        }
    }
    let detail = if bad.is_empty() {
        format!("T(M1) = T(M3) = 0 and T(M2) matches the closed form on {shapes} shapes, n <= {max_n}")
    } else {
        format!("mismatch at {}", bad.join(" "))
    };
    Ok(Check::new("t-identities", bad.is_empty(), detail))
}

/// How the resolved `n = 3` sign sits against the two candidate laws.
pub fn sign_report(signs: &SignTable) -> String {
    match signs.get(3) {
        Some((s, src)) => {
            let alternating = LeakSign::Minus;
            let (fits, misses) = if s == alternating {
                ("s = (-1)^((n-1)/2)", "a constant s = +1")
            } else {
                ("a constant s = +1", "s = (-1)^((n-1)/2)")
            };
            format!(
                "n = 3 leak sign s = {:+} ({}); consistent with {fits}, inconsistent with {misses}",
                s.as_i8(),
                src.as_str()
            )
        }
        None => "n = 3 not covered; no sign report".to_string(),
    }
}

fn check_signs(max_n: usize, oracle: Option<&OracleEngine>) -> Result<(Check, SignTable), CliError> {
    let table = match oracle {
        Some(o) => resolve_sign_table(max_n, o)?,
        None => {
            let mut t = SignTable::new();
            for n in (1..=max_n).step_by(2) {
                t.insert(n, calculus_sign(n)?, SignSource::TableCalculus);
            }
            t
        }
    };
    let mut bad = Vec::new();
    let mut listed = Vec::new();
    for (n, s, _) in table.iter() {
        let law = if ((n - 1) / 2) % 2 == 0 { LeakSign::Plus } else { LeakSign::Minus };
        if s != calculus_sign(n)? || s != law {
            bad.push(n);
        }
        listed.push(format!("n={n}:{:+}", s.as_i8()));
    }
    let detail = if bad.is_empty() {
        format!("{}; {}", listed.join(" "), sign_report(&table))
    } else {
        format!("resolved sign disagrees with the table calculus for n in {bad:?}")
    };
    Ok((Check::new("sign-resolution", bad.is_empty(), detail), table))
}

fn aligned_subsets(n: usize) -> impl Iterator<Item = RegisterSubset> {
    (0..1u64 << n).map(move |mask| {
        let tags = (0..n)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    cloneleak_core::PairTag::Signal
                } else {
                    cloneleak_core::PairTag::Noise
                }
            })
            .collect();
        RegisterSubset::new(tags).expect("aligned subsets are nonempty")
    })
}

/// Oracle and analytic states agree entrywise on every aligned subset and
/// grid point.
pub fn check_engine_agreement(
    max_n: usize,
    oracle: &OracleEngine,
    analytic: &AnalyticEngine,
    grid: &BlochGrid,
) -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let mut count = 0;
    for n in 1..=max_n {
        for b in aligned_subsets(n) {
            for psi in grid.points() {
                let d = oracle.reduce(&b, psi)?.max_abs_diff(&analytic.reduce(&b, psi)?)?;
                if d > worst {
                    worst = d;
                    worst_at = format!("{b} (n={n})");
                }
                count += 1;
            }
        }
    }
    let passed = worst < tol::ENGINE_AGREEMENT;
    let detail = if passed {
        format!("{count} reductions, max entry difference {worst:.2e}")
    } else {
        format!("max entry difference {worst:.3e} at {worst_at}")
    };
    Ok(Check::new("engine-agreement", passed, detail))
}

/// Every subset missing a whole pair is independent of the input.
pub fn check_missing_pair<E: ReductionEngine>(
    max_n: usize,
    engine: &E,
    grid: &BlochGrid,
) -> Result<Check, CliError> {
    let mut count = 0;
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for n in 1..=max_n {
        for idx in 1..4u64.pow(n as u32) {
            let b = RegisterSubset::from_pattern_index(n, idx)?;
            if b.missing_pairs() == 0 {
                continue;
            }
            let r = cloneleak_core::leakage::informativeness_probe(engine, &b, grid)?;
            worst = worst.max(r.max_pairwise_distance);
            if r.max_pairwise_distance >= tol::UNINFORMATIVE {
                bad.push(format!("{b} (n={n})"));
            }
            count += 1;
        }
    }
    let detail = if bad.is_empty() {
        format!("{count} patterns, max distance {worst:.2e}")
    } else {
        format!("input dependence at {}", bad.join(" "))
    };
    Ok(Check::new("missing-pair", bad.is_empty(), detail))
}

/// Structural verdicts agree with probe verdicts. With the analytic engine
/// only aligned subsets can be probed.
pub fn check_parity_table<E: ReductionEngine>(
    max_n: usize,
    engine: &E,
    signs: &SignTable,
    grid: &BlochGrid,
    aligned_only: bool,
) -> Result<Check, CliError> {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=max_n {
        for (b, c) in enumerate_classifications(n, signs)? {
            if aligned_only && !matches!(canonical_shape(&b), ShapeClass::Aligned(_)) {
                continue;
            }
            let (pv, _) = probe_verdict(engine, &b, grid)?;
            if pv.verdict() != c.verdict {
                bad.push(format!("{b} (n={n}): {} vs probe {}", c.verdict, pv.verdict()));
            }
            count += 1;
        }
    }
    let detail = if bad.is_empty() {
        format!("{count} patterns, zero disagreements")
    } else {
        bad.join("; ")
    };
    Ok(Check::new("parity-table", bad.is_empty(), detail))
}

/// Every singleton and the source qubit alone are maximally mixed.
pub fn check_singletons(max_n: usize, oracle: &OracleEngine, grid: &BlochGrid) -> Result<Check, CliError> {
    let half = DensityMatrix::maximally_mixed(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 2..=max_n {
        let mut sets = vec![QubitSet::new(vec![QubitSet::SOURCE], n)?];
        for i in 1..=n {
            sets.push(QubitSet::new(vec![QubitSet::signal(i)], n)?);
            sets.push(QubitSet::new(vec![QubitSet::noise(i)], n)?);
        }
        for psi in grid.points() {
            for set in &sets {
                let rho = oracle.reduce_positions(n, set, psi)?;
                worst = worst.max(rho.max_abs_diff(&half)?);
                count += 1;
            }
        }
    }
    let passed = worst < 1e-12;
    Ok(Check::new(
        "singleton-mixedness",
        passed,
        format!("{count} reductions for 2 <= n <= {max_n}, max entry deviation {worst:.2e}"),
    ))
}

fn check_bell() -> Check {
    let r = bell_trace_identity_residual();
    Check::new("bell-identities", r < 1e-12, format!("residual {r:.2e}"))
}

/// `Tr(ρ Y⊗n)` is `s·y` on leaking subsets for both engines.
fn check_y_linearity(
    max_n: usize,
    engines: &[&dyn ReductionEngine],
    signs: &SignTable,
) -> Result<Check, CliError> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in (1..=max_n).step_by(2) {
        let s = signs.sign(n)?.value();
        for p in (1..=n).step_by(2) {
            let b = RegisterSubset::aligned(n, p)?;
            for y in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                let psi = cloneleak_core::BlochVector::new((1.0f64 - y * y).sqrt(), y, 0.0)?;
                for e in engines {
                    let v = y_leak_estimate(&e.reduce(&b, &psi)?, n)?;
                    worst = worst.max((v - s * y).abs());
                    count += 1;
                }
            }
        }
    }
    Ok(Check::new(
        "y-linearity",
        worst < tol::ENGINE_AGREEMENT,
        format!("{count} readouts, max deviation from s*y {worst:.2e}"),
    ))
}

/// Runs the suite and reports per check. `tamper_sign` flips the analytic
/// `Y⊗n` coefficient, which must make engine agreement fail.
pub fn run_checks(common: &Common, tamper_sign: bool) -> Result<(Vec<Check>, SignTable), CliError> {
    let max_n = common.n.map(|n| n as usize).unwrap_or(4);
    let choice = common.engine.unwrap_or(EngineChoice::Both);
    let grid = grid_for(common)?;
    let analytic = AnalyticEngine {
        tamper_sign,
        ..AnalyticEngine::default()
    };
    let mut checks = vec![check_t_identities(T_IDENTITY_MAX_N.max(max_n))?];
    let oracle = oracle_for(common);
    if choice.uses_oracle() && max_n > oracle.cap {
        return Err(cloneleak_core::Error::ClonesAboveCap { n: max_n, cap: oracle.cap }.into());
    }
    let (sign_check, signs) = check_signs(max_n, choice.uses_oracle().then_some(&oracle))?;
    checks.push(sign_check);
    let mut engines: Vec<&dyn ReductionEngine> = Vec::new();
    if choice.uses_oracle() {
        engines.push(&oracle);
    }
    if choice.uses_analytic() {
        engines.push(&analytic);
    }
    checks.push(check_y_linearity(max_n, &engines, &signs)?);
    if choice.uses_oracle() {
        checks.push(check_bell());
    }
    if choice == EngineChoice::Both {
        checks.push(check_engine_agreement(max_n, &oracle, &analytic, &grid)?);
    }
    if choice.uses_oracle() {
        checks.push(check_missing_pair(max_n, &oracle, &grid)?);
        checks.push(check_parity_table(max_n, &oracle, &signs, &grid, false)?);
        checks.push(check_singletons(max_n, &oracle, &grid)?);
    } else {
        checks.push(check_parity_table(max_n, &analytic, &signs, &grid, true)?);
    }
    Ok((checks, signs))
}

pub(crate) fn cmd_verify(common: &Common, tamper_sign: bool, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (checks, signs) = run_checks(common, tamper_sign)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let report = sign_report(&signs);
    match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            for c in &checks {
                writeln!(out, "{} {:<20} {}", if c.passed { "PASS" } else { "FAIL" }, c.check, c.detail)?;
            }
            writeln!(out, "sign: {report}")?;
            writeln!(
                out,
                "{} of {} checks passed in {:.2} s",
                checks.len() - failed,
                checks.len(),
                start.elapsed().as_secs_f64()
            )?;
        }
        format => {
            let summary = VerifySummary {
                passed: checks.len() - failed,
                failed,
                signs: signs
                    .iter()
                    .map(|(n, s, src)| SignRow {
                        n,
                        sign: s.as_i8(),
                        source: src.as_str(),
                    })
                    .collect(),
                sign_report: report,
            };
            let max_n = common.n.map(|n| n as usize).unwrap_or(4);
            let engine = common.engine.unwrap_or(EngineChoice::Both).as_str();
            Record::new(max_n, engine, common.seed, checks.clone(), summary).write(format, out)?;
        }
    }
    for c in checks.iter().filter(|c| !c.passed) {
        eprintln!("verify: check `{}` failed: {}", c.check, c.detail);
    }
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::VerifyFailed })
}
