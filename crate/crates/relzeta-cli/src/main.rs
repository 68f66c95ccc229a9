//! Batch front door for the zero-relation toolkit: zero acquisition,
//! explicit-formula verification, relation harness runs and report
//! emission.
//!
//! Exit codes: 0 PASS, 1 FAIL, 2 usage/config error, 3 SKIPPED for
//! missing zero data.

mod config;
mod jsonfmt;
mod runs;

use clap::{Parser, Subcommand};
use config::RunConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "relzeta",
    version,
    about = "Zero-relation verification toolkit",
    long_about = "Finds and validates L-function zeros, balances the explicit \
formula, and runs the zero-sum relation harnesses. Exit codes: 0 pass, 1 fail, \
2 usage or configuration error, 3 skipped for missing zero data."
)]
struct Cli {
    /// Worker threads for independent checks (0 = machine parallelism).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Output directory (overrides the config file and the RELZETA_OUT
    /// environment variable).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find zeros of a registered L-function up to height T and write them
    /// in the standard zero-file format. Fails when the ordinate count
    /// disagrees with the argument-principle count.
    Zeros {
        /// "zeta" or "dirichlet-<q>.<a>"
        label: String,
        #[arg(long)]
        t: f64,
        /// Output file (default: <outdir>/zeros-<label>.txt)
        #[arg(long)]
        out_file: Option<PathBuf>,
    },
    /// Validate a zero file (format, monotonicity) and print a summary.
    Ingest {
        file: PathBuf,
        /// Store label override (default: the file's header label).
        #[arg(long)]
        label: Option<String>,
    },
    /// Balance the explicit formula for one L-function; exit 0 iff the
    /// discrepancy meets the configured tolerance.
    VerifyEf {
        /// "zeta" or "dirichlet-<q>.<a>"
        label: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Tolerance override.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Run one relation harness and write its JSON + CSV report.
    Relation {
        /// One of: thm1 thm2 thm5 thm6 thm7 thm8 linnik symmetry tensor-split
        name: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run every relation harness plus the explicit-formula balances and
    /// write an aggregate summary. Exit 1 if anything fails; skipped
    /// relations are recorded but do not fail the run.
    Report {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Confine all parallelism to an explicitly sized pool; reductions
        // below it are assembled in fixed order.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("config error: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = match &cli.cmd {
        Cmd::Zeros { label, t, out_file } => runs::cmd_zeros(&cfg, label, *t, out_file.as_deref()),
        Cmd::Ingest { file, label } => runs::cmd_ingest(file, label.as_deref()),
        Cmd::VerifyEf {
            label, tolerance, ..
        } => runs::cmd_verify_ef(&cfg, label, *tolerance),
        Cmd::Relation { name, .. } => runs::cmd_relation(&cfg, name),
        Cmd::Report { .. } => runs::cmd_report(&cfg),
    };
    ExitCode::from(code)
}

fn load_config(cli: &Cli) -> Result<RunConfig, String> {
    let path = match &cli.cmd {
        Cmd::VerifyEf { config, .. } | Cmd::Relation { config, .. } | Cmd::Report { config } => {
            config.clone()
        }
        _ => None,
    };
    let mut cfg = match path {
        Some(p) => RunConfig::from_file(&p)?,
        None => RunConfig::default(),
    };
    // Output-directory precedence: flag > environment > config file.
    if let Ok(env_out) = std::env::var("RELZETA_OUT") {
        cfg.output_dir = PathBuf::from(env_out);
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    Ok(cfg)
}
