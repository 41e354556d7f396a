//! classify, reduce, table and sweep.

use std::fs::File;
use std::io::{BufWriter, Write};

use cloneleak_core::classify::{classify, enumerate_classifications, verdict_counts};
use cloneleak_core::leakage::{informativeness_probe, max_pairwise_distance, y_leak_estimate};
use cloneleak_core::linalg::DensityMatrix;
use cloneleak_core::pauli::{dense_to_pauli_sum, Pauli, PauliString};
use cloneleak_core::{
    AnalyticEngine, BlochGrid, Classification, EngineKind, OracleEngine, PauliSum,
    ReductionEngine, RegisterSubset, ShapeClass, SignTable,
};
use serde::Serialize;

use crate::report::Record;
use crate::{parse_psi, parse_subset, verify, Cli, CliError, Command, Common, EngineChoice, Format, Outcome};

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let common = match &cli.command {
        Command::Classify { common, .. }
        | Command::Reduce { common, .. }
        | Command::Table { common, .. }
        | Command::Verify { common, .. }
        | Command::Sweep { common, .. } => common,
    };
    if common.n == Some(1) {
        eprintln!(
            "note: with one clone the lone signal qubit is not fully hidden; \
             the protocol is meant for n > 1 but the run proceeds"
        );
    }
    let mut sink: Box<dyn Write + '_> = match &common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *out),
    };
    let outcome = match &cli.command {
        Command::Classify { common, subset } => cmd_classify(common, subset, &mut sink)?,
        Command::Reduce { common, subset, psi } => cmd_reduce(common, subset, psi, &mut sink)?,
        Command::Table { common, probe } => cmd_table(common, *probe, &mut sink)?,
        Command::Verify { common, tamper_sign } => verify::cmd_verify(common, *tamper_sign, &mut sink)?,
        Command::Sweep { common, subset } => cmd_sweep(common, subset, &mut sink)?,
    };
    sink.flush()?;
    Ok(outcome)
}

pub(crate) fn oracle_for(common: &Common) -> OracleEngine {
    OracleEngine::with_cap(common.oracle_cap as usize)
}

pub(crate) fn grid_for(common: &Common) -> Result<BlochGrid, CliError> {
    Ok(BlochGrid::new(common.grid as usize, common.seed)?)
}

/// Sign table holding just `n`: oracle-resolved within the cap, otherwise
/// from the table calculus.
pub(crate) fn signs_for(n: usize, oracle: &OracleEngine) -> Result<SignTable, CliError> {
    let mut table = SignTable::new();
    if n % 2 == 1 {
        let full = cloneleak_core::leakage::resolve_sign_table(n, oracle)?;
        if let Some((s, src)) = full.get(n) {
            table.insert(n, s, src);
        }
    }
    Ok(table)
}

fn shape_counts(b: &RegisterSubset) -> (usize, usize) {
    (b.signal_count(), b.noise_count())
}

#[derive(Debug, Serialize)]
struct ClassifyRow {
    pattern: String,
    size: usize,
    p: usize,
    q: usize,
    verdict: &'static str,
    rule: &'static str,
    observable: Option<String>,
    sign: Option<i8>,
}

impl ClassifyRow {
    fn new(b: &RegisterSubset, c: &Classification) -> Self {
        let (p, q) = shape_counts(b);
        ClassifyRow {
            pattern: b.labels(),
            size: b.size(),
            p,
            q,
            verdict: c.verdict.as_str(),
            rule: c.reason.as_str(),
            observable: c.leak.as_ref().map(|l| l.observable.to_string()),
            sign: c.leak.as_ref().map(|l| l.sign.as_i8()),
        }
    }
}

#[derive(Debug, Serialize)]
struct Counts {
    authorized: usize,
    completely_uninformative: usize,
    partially_informative: usize,
    total: usize,
}

impl Counts {
    fn of(rows: &[(RegisterSubset, Classification)]) -> Self {
        let [a, c, p] = verdict_counts(rows);
        Counts {
            authorized: a,
            completely_uninformative: c,
            partially_informative: p,
            total: rows.len(),
        }
    }
}

fn cmd_classify(common: &Common, subset: &str, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let n = common.n()?;
    let b = parse_subset(subset, n)?;
    let signs = signs_for(n, &oracle_for(common))?;
    let c = classify(&b, &signs)?;
    let engine = common.engine.unwrap_or(EngineChoice::Oracle);
    match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            writeln!(out, "subset   {b}  (n = {n})")?;
            writeln!(out, "verdict  {}", c.verdict)?;
            writeln!(out, "rule     {}", c.reason)?;
            if let Some(leak) = &c.leak {
                writeln!(out, "leak     {} on {}", leak.sign.as_i8(), leak.observable)?;
            }
        }
        format => {
            let row = ClassifyRow::new(&b, &c);
            let counts = Counts::of(&[(b, c)]);
            Record::new(n, engine.as_str(), common.seed, vec![row], counts).write(format, out)?;
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Debug, Serialize)]
struct ReduceRow {
    engine: &'static str,
    pauli: String,
    coeff: f64,
}

#[derive(Debug, Serialize)]
struct ReduceSummary {
    pattern: String,
    psi: [f64; 3],
    max_engine_difference: Option<f64>,
}

fn engines(choice: EngineChoice, oracle: OracleEngine) -> Vec<Box<dyn ReductionEngine>> {
    let mut v: Vec<Box<dyn ReductionEngine>> = Vec::new();
    if choice.uses_oracle() {
        v.push(Box::new(oracle));
    }
    if choice.uses_analytic() {
        v.push(Box::new(AnalyticEngine::default()));
    }
    v
}

fn cmd_reduce(common: &Common, subset: &str, psi: &str, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let n = common.n()?;
    let b = parse_subset(subset, n)?;
    let psi = parse_psi(psi)?;
    let choice = common.engine.unwrap_or(EngineChoice::Both);
    let mut states: Vec<(EngineKind, DensityMatrix, PauliSum)> = Vec::new();
    for engine in engines(choice, oracle_for(common)) {
        let rho = engine.reduce(&b, &psi)?;
        let sum = dense_to_pauli_sum(rho.matrix())?;
        states.push((engine.kind(), rho, sum));
    }
    let diff = match &states[..] {
        [a, b] => Some(a.1.max_abs_diff(&b.1)?),
        _ => None,
    };
    match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            writeln!(out, "subset  {b}  psi = ({}, {}, {})", psi.x, psi.y, psi.z)?;
            for (kind, _, sum) in &states {
                writeln!(out, "{:<9} rho = {}", kind.as_str(), sum.listing())?;
            }
            if let Some(d) = diff {
                writeln!(out, "max entry difference between engines: {d:.3e}")?;
            }
        }
        format => {
            let rows = states
                .iter()
                .flat_map(|(kind, _, sum)| {
                    sum.terms().map(move |(p, c)| ReduceRow {
                        engine: kind.as_str(),
                        pauli: p.to_string(),
                        coeff: c,
                    })
                })
                .collect();
            let summary = ReduceSummary {
                pattern: b.labels(),
                psi: [psi.x, psi.y, psi.z],
                max_engine_difference: diff,
            };
            Record::new(n, choice.as_str(), common.seed, rows, summary).write(format, out)?;
        }
    }
    Ok(Outcome::Ok)
}

#[derive(Debug, Serialize)]
pub(crate) struct TableRow {
    pattern: String,
    size: usize,
    p: usize,
    q: usize,
    verdict: &'static str,
    rule: &'static str,
    max_distance: Option<f64>,
    y_signal: Option<f64>,
}

/// Table of every nonempty pattern, written in the requested format.
pub fn write_table(common: &Common, probe: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let n = common.n()?;
    let oracle = oracle_for(common);
    let signs = signs_for(n, &oracle)?;
    let rows = enumerate_classifications(n, &signs)?;
    let choice = common.engine.unwrap_or(EngineChoice::Oracle);
    let grid = grid_for(common)?;
    let analytic = AnalyticEngine::default();
    let mut out_rows = Vec::with_capacity(rows.len());
    for (b, c) in &rows {
        let report = if !probe {
            None
        } else if choice == EngineChoice::Analytic {
            match cloneleak_core::classify::canonical_shape(b) {
                ShapeClass::Aligned(_) => Some(informativeness_probe(&analytic, b, &grid)?),
                _ => None,
            }
        } else {
            Some(informativeness_probe(&oracle, b, &grid)?)
        };
        let (p, q) = shape_counts(b);
        out_rows.push(TableRow {
            pattern: b.labels(),
            size: b.size(),
            p,
            q,
            verdict: c.verdict.as_str(),
            rule: c.reason.as_str(),
            max_distance: report.as_ref().map(|r| r.max_pairwise_distance),
            y_signal: report.as_ref().map(|r| r.y_signal),
        });
    }
    let counts = Counts::of(&rows);
    let format = common.format.unwrap_or(Format::Json);
    if format == Format::Text {
        for r in &out_rows {
            writeln!(out, "{:<24} {:<26} {}", r.pattern, r.verdict, r.rule)?;
        }
        writeln!(
            out,
            "{} patterns: {} authorized, {} completely uninformative, {} partially informative",
            counts.total, counts.authorized, counts.completely_uninformative, counts.partially_informative
        )?;
        return Ok(());
    }
    Record::new(n, choice.as_str(), common.seed, out_rows, counts).write(format, out)
}

fn cmd_table(common: &Common, probe: bool, out: &mut dyn Write) -> Result<Outcome, CliError> {
    write_table(common, probe, out)?;
    Ok(Outcome::Ok)
}

#[derive(Debug, Serialize)]
struct SweepRow {
    engine: &'static str,
    index: usize,
    x: f64,
    y: f64,
    z: f64,
    y_leak: f64,
    max_distance: f64,
}

#[derive(Debug, Serialize)]
struct SweepSummary {
    pattern: String,
    observable: String,
    engines: Vec<SweepEngineSummary>,
}

#[derive(Debug, Serialize)]
struct SweepEngineSummary {
    engine: &'static str,
    max_distance: f64,
    verdict: &'static str,
    slope: f64,
    intercept: f64,
}

/// Least-squares line through `(x, y)` points.
fn fit_line(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

/// Per-point `Tr(ρ_B Y⊗|B|)` across the grid, plus the largest pairwise
/// distance per engine.
pub fn write_sweep(common: &Common, subset: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let n = common.n()?;
    let b = parse_subset(subset, n)?;
    let grid = grid_for(common)?;
    let choice = common.engine.unwrap_or(EngineChoice::Oracle);
    let observable = PauliString::uniform(Pauli::Y, b.size());
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for engine in engines(choice, oracle_for(common)) {
        let states: Vec<DensityMatrix> = grid
            .points()
            .iter()
            .map(|psi| engine.reduce(&b, psi))
            .collect::<Result<_, _>>()?;
        let max = max_pairwise_distance(&states)?;
        let verdict = cloneleak_core::Informativeness::from_distance(max)?;
        let mut line = Vec::with_capacity(states.len());
        for (index, (psi, rho)) in grid.points().iter().zip(&states).enumerate() {
            let leak = y_leak_estimate(rho, b.size())?;
            line.push((psi.y, leak));
            rows.push(SweepRow {
                engine: engine.kind().as_str(),
                index,
                x: psi.x,
                y: psi.y,
                z: psi.z,
                y_leak: leak,
                max_distance: max,
            });
        }
        let (slope, intercept) = fit_line(&line);
        summaries.push(SweepEngineSummary {
            engine: engine.kind().as_str(),
            max_distance: max,
            verdict: verdict.as_str(),
            slope,
            intercept,
        });
    }
    let format = common.format.unwrap_or(Format::Json);
    if format == Format::Text {
        for r in &rows {
            writeln!(
                out,
                "{:<8} {:>3}  ({:+.6}, {:+.6}, {:+.6})  {:+.12}",
                r.engine, r.index, r.x, r.y, r.z, r.y_leak
            )?;
        }
        for s in &summaries {
            writeln!(
                out,
                "{}: max distance {:.3e} ({}), slope {:+.12}, intercept {:+.3e}",
                s.engine, s.max_distance, s.verdict, s.slope, s.intercept
            )?;
        }
        return Ok(());
    }
    let summary = SweepSummary {
        pattern: b.labels(),
        observable: observable.to_string(),
        engines: summaries,
    };
    Record::new(n, choice.as_str(), common.seed, rows, summary).write(format, out)
}

fn cmd_sweep(common: &Common, subset: &str, out: &mut dyn Write) -> Result<Outcome, CliError> {
    write_sweep(common, subset, out)?;
    Ok(Outcome::Ok)
}

