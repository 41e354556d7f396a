//! Record layout shared by every command.

use std::io::Write;

use cloneleak_core::tol;
use serde::Serialize;

use crate::{CliError, Format};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    pub uninformative: f64,
    pub informative: f64,
    pub density: f64,
    pub engine_agreement: f64,
    pub distance_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            uninformative: tol::UNINFORMATIVE,
            informative: tol::INFORMATIVE,
            density: tol::DENSITY,
            engine_agreement: tol::ENGINE_AGREEMENT,
            distance_floor: tol::DISTANCE_FLOOR,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Record<R, S> {
    pub n: usize,
    pub engine: &'static str,
    pub seed: u64,
    pub rows: Vec<R>,
    pub summary: S,
    pub tolerances: Tolerances,
}

impl<R: Serialize, S: Serialize> Record<R, S> {
    pub fn new(n: usize, engine: &'static str, seed: u64, rows: Vec<R>, summary: S) -> Self {
        Record {
            n,
            engine,
            seed,
            rows,
            summary,
            tolerances: Tolerances::default(),
        }
    }

    /// Writes the record as pretty JSON or the rows as CSV. Text output is
    /// handled by each command.
    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json | Format::Text => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for row in &self.rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
