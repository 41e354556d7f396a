use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cloneleak", version, about = "Leakage classifier for encrypted qubit clones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one register subset.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Qubit labels, e.g. S1,N2,N3.
        #[arg(long)]
        subset: String,
    },
    /// Print the reduced state of a subset for one input.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subset: String,
        /// Input Bloch vector x,y,z.
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
    },
    /// Classify every nonempty membership pattern.
    Table {
        #[command(flatten)]
        common: Common,
        /// Also run the grid probe on every pattern.
        #[arg(long)]
        probe: bool,
    },
    /// Run the invariant checks for all n up to --n.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, hide = true)]
        tamper_sign: bool,
    },
    /// Y-leak estimate and distances across the probe grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subset: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Oracle,
    Analytic,
    Both,
}

impl EngineChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineChoice::Oracle => "oracle",
            EngineChoice::Analytic => "analytic",
            EngineChoice::Both => "both",
        }
    }

    pub fn uses_oracle(self) -> bool {
        self != EngineChoice::Analytic
    }

    pub fn uses_analytic(self) -> bool {
        self != EngineChoice::Oracle
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Number of clones.
    #[arg(long = "n", value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long, value_enum)]
    pub engine: Option<EngineChoice>,
    /// Number of probe points (at least 6).
    #[arg(long, default_value_t = 26, value_parser = clap::value_parser!(u64).range(6..))]
    pub grid: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Largest n the statevector engine accepts.
    #[arg(long, default_value_t = cloneleak_core::tol::ORACLE_CAP as u64)]
    pub oracle_cap: u64,
    /// Write the record here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

impl Common {
    pub fn n(&self) -> Result<usize, crate::CliError> {
        self.n.map(|n| n as usize).ok_or(crate::CliError::Missing("n"))
    }
}
