//! Command-line front end: argument parsing, dispatch, exit-code mapping.
//!
//! Exit codes: `0` — every audited claim within tolerance; `2` — the run
//! completed but some measured claim (typically the unit-product one) fell
//! outside tolerance; `1` — operational error (bad usage, unreadable files,
//! solver failure). Help and version requests exit `0`.

pub mod commands;
pub mod scenario;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::biortho::BiorthoError;
use crate::extension::ExtensionError;
use crate::hilbert::HilbertError;
use crate::norms::NormError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Biortho(#[from] BiorthoError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }
}

/// Output directory plus the global flags, shared by every command.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub out_dir: PathBuf,
    pub tol: Option<f64>,
    pub trace: bool,
    pub seed: Option<u64>,
}

impl RunContext {
    pub fn out_path(&self, file: &str) -> PathBuf {
        self.out_dir.join(file)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mbasis",
    version,
    about = "Numerical workbench for biorthogonal systems on finite-dimensional normed spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Override the default audit tolerance (biorthogonality defect).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Directory for report files (default "."); env MBASIS_OUT overrides.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include iteration traces and timing columns in the reports.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Fallback seed for generators that need one.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Audit the built-in two-dimensional worked example.
    AuditExample,
    /// Run the constructions described by a scenario file.
    Construct {
        /// Scenario JSON file.
        file: PathBuf,
    },
    /// Sweep sequence-space dimension and tabulate product statistics.
    Sweep {
        /// Sweep JSON file.
        file: PathBuf,
    },
    /// Search for an Auerbach system (all norm products 1) in l_p.
    Auerbach {
        /// Space dimension.
        #[arg(long)]
        dim: usize,
        /// Exponent p: a number >= 1, or "inf".
        #[arg(long, default_value = "2")]
        p: String,
        /// Maximum exchange sweeps before giving up.
        #[arg(long, default_value_t = 64)]
        max_sweeps: usize,
    },
}

/// Parse argv and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are not failures; genuine usage errors exit 1
            // so that 2 stays reserved for out-of-tolerance audit results.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let out_dir = std::env::var_os("MBASIS_OUT")
        .map(PathBuf::from)
        .or(cli.out)
        .unwrap_or_else(|| PathBuf::from("."));
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        eprintln!("error: cannot create output directory {}: {e}", out_dir.display());
        return 1;
    }
    let ctx = RunContext { out_dir, tol: cli.tol, trace: cli.trace, seed: cli.seed };
    let result = match cli.command {
        Command::AuditExample => commands::cmd_audit_example(&ctx),
        Command::Construct { file } => commands::cmd_construct(&ctx, &file),
        Command::Sweep { file } => commands::cmd_sweep(&ctx, &file),
        Command::Auerbach { dim, p, max_sweeps } => {
            commands::cmd_auerbach(&ctx, dim, &p, max_sweeps)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
